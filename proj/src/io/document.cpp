#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "twocy/io.hpp"

namespace twocy::io {

namespace {

std::string at(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string at(const std::string& path, std::size_t k) { return path + "/" + std::to_string(k); }

const Json& member(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw InputError(at(path, key), "missing field");
    return *it;
}

const Json* optional_member(const Json& j, const std::string& key, const std::string& path) {
    if (!j.is_object()) throw InputError(path, "expected an object");
    auto it = j.find(key);
    return it == j.end() || it->is_null() ? nullptr : &*it;
}

const Json& array(const Json& j, const std::string& path) {
    if (!j.is_array()) throw InputError(path, "expected an array");
    return j;
}

std::string string(const Json& j, const std::string& path) {
    if (!j.is_string()) throw InputError(path, "expected a string");
    return j.get<std::string>();
}

long integer(const Json& j, const std::string& path) {
    if (!j.is_number_integer()) throw InputError(path, "expected an integer");
    return j.get<long>();
}

bool boolean(const Json& j, const std::string& path) {
    if (!j.is_boolean()) throw InputError(path, "expected true or false");
    return j.get<bool>();
}

std::vector<std::string> strings(const Json& j, const std::string& path) {
    std::vector<std::string> out;
    for (std::size_t k = 0; k < array(j, path).size(); ++k) out.push_back(string(j[k], at(path, k)));
    return out;
}

int lookup(const std::vector<std::string>& names, const std::string& name, const std::string& what, const std::string& path) {
    for (std::size_t k = 0; k < names.size(); ++k)
        if (names[k] == name) return static_cast<int>(k);
    throw InputError(path, "unknown " + what + " \"" + name + "\"");
}

void require_unique(const std::vector<std::string>& names, const std::string& what, const std::string& path) {
    std::set<std::string> seen;
    for (std::size_t k = 0; k < names.size(); ++k)
        if (!seen.insert(names[k]).second) throw InputError(at(path, k), "duplicate " + what + " \"" + names[k] + "\"");
}

Scalar in_field(const Scalar& s, const FieldCtx& f, const std::string& path) {
    if (!s.is_rational() && s.modulus() != f.p) throw InputError(path, "scalar modulus differs from the field " + field_name(f));
    try {
        return s.in(f);
    } catch (const FieldError& e) {
        throw InputError(path, e.what());
    }
}

template <class F>
auto guarded(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const InputError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw InputError(path, e.what());
    }
}

// ---- paths ----

Json combo_json(const Quiver& q, const PathCombo& c) {
    Json out = Json::array();
    for (const auto& [p, s] : c) {
        Json arrows = Json::array();
        for (int a : p.arrows) arrows.push_back(q.arrows[static_cast<std::size_t>(a)].id);
        out.push_back({{"path", arrows},
                       {"src", q.vertices[static_cast<std::size_t>(p.src)]},
                       {"tgt", q.vertices[static_cast<std::size_t>(p.tgt)]},
                       {"coeff", scalar_json(s)}});
    }
    return out;
}

std::vector<std::string> arrow_ids(const Quiver& q) {
    std::vector<std::string> ids;
    for (const auto& a : q.arrows) ids.push_back(a.id);
    return ids;
}

PathCombo parse_combo(const Quiver& q, const Json& j, const std::string& path) {
    PathCombo c;
    const auto ids = arrow_ids(q);
    for (std::size_t k = 0; k < array(j, path).size(); ++k) {
        const std::string pk = at(path, k);
        const Json& term = j[k];
        Path p;
        const Json& arrows = member(term, "path", pk);
        for (std::size_t m = 0; m < array(arrows, at(pk, "path")).size(); ++m)
            p.arrows.push_back(lookup(ids, string(arrows[m], at(at(pk, "path"), m)), "arrow", at(at(pk, "path"), m)));
        for (std::size_t m = 0; m + 1 < p.arrows.size(); ++m)
            if (q.arrows[static_cast<std::size_t>(p.arrows[m])].src != q.arrows[static_cast<std::size_t>(p.arrows[m + 1])].tgt)
                throw InputError(at(pk, "path"), "arrows are not composable");
        const Json* src = optional_member(term, "src", pk);
        const Json* tgt = optional_member(term, "tgt", pk);
        if (p.arrows.empty()) {
            if (!src || !tgt) throw InputError(pk, "an idempotent needs src and tgt");
            p.src = lookup(q.vertices, string(*src, at(pk, "src")), "vertex", at(pk, "src"));
            p.tgt = lookup(q.vertices, string(*tgt, at(pk, "tgt")), "vertex", at(pk, "tgt"));
            if (p.src != p.tgt) throw InputError(pk, "an idempotent has src == tgt");
        } else {
            p.tgt = q.arrows[static_cast<std::size_t>(p.arrows.front())].tgt;
            p.src = q.arrows[static_cast<std::size_t>(p.arrows.back())].src;
            if (src && lookup(q.vertices, string(*src, at(pk, "src")), "vertex", at(pk, "src")) != p.src)
                throw InputError(at(pk, "src"), "does not match the path");
            if (tgt && lookup(q.vertices, string(*tgt, at(pk, "tgt")), "vertex", at(pk, "tgt")) != p.tgt)
                throw InputError(at(pk, "tgt"), "does not match the path");
        }
        add_term(c, p, parse_scalar(member(term, "coeff", pk), at(pk, "coeff")));
    }
    return c;
}

Json basis_json(const AInfCategory& c) {
    Json out = Json::array();
    for (const auto& b : c.basis)
        out.push_back({{"label", b.label},
                       {"src", c.objects[static_cast<std::size_t>(b.src)]},
                       {"tgt", c.objects[static_cast<std::size_t>(b.tgt)]},
                       {"degree", b.degree}});
    return out;
}

Json units_json(const AInfCategory& c) {
    Json out = Json::object();
    for (const auto& [o, u] : c.units) out[c.objects[static_cast<std::size_t>(o)]] = c.basis[static_cast<std::size_t>(u)].label;
    return out;
}

// objects, basis and units of a category payload or shape.
void parse_shape(AInfCategory& c, const Json& j, const std::string& path) {
    c.objects = strings(member(j, "objects", path), at(path, "objects"));
    require_unique(c.objects, "object", at(path, "objects"));
    const Json& basis = member(j, "basis", path);
    const std::string pb = at(path, "basis");
    std::vector<std::string> labels;
    for (std::size_t k = 0; k < array(basis, pb).size(); ++k) {
        const std::string pk = at(pb, k);
        BasisElem b;
        b.label = string(member(basis[k], "label", pk), at(pk, "label"));
        b.src = lookup(c.objects, string(member(basis[k], "src", pk), at(pk, "src")), "object", at(pk, "src"));
        b.tgt = lookup(c.objects, string(member(basis[k], "tgt", pk), at(pk, "tgt")), "object", at(pk, "tgt"));
        b.degree = static_cast<int>(integer(member(basis[k], "degree", pk), at(pk, "degree")));
        labels.push_back(b.label);
        c.basis.push_back(b);
    }
    require_unique(labels, "basis label", pb);
    if (const Json* units = optional_member(j, "units", path)) {
        if (!units->is_object()) throw InputError(at(path, "units"), "expected an object");
        for (const auto& [obj, label] : units->items()) {
            const std::string pu = at(at(path, "units"), obj);
            int o = lookup(c.objects, obj, "object", pu);
            c.units[o] = lookup(labels, string(label, pu), "basis label", pu);
        }
    }
}

std::string letter_json(const Alphabet& a, int code) {
    if (code < 0) return "const:" + std::to_string(-1 - code);
    const std::string& label = a.labels[static_cast<std::size_t>(letter_of(code))];
    return is_d(code) ? "d:" + label : label;
}

}  // namespace

const std::vector<std::string> kKinds{"quiver", "dg_algebra", "ainf_category", "pairing", "potential", "matrix_rep", "hn_query"};

Json conventions() { return {{"composition", "written-order"}, {"differential", "cohomological"}, {"operations", "shifted-b"}}; }

FieldCtx parse_field(const std::string& s) {
    if (s == "rationals" || s == "Q") return FieldCtx::rationals();
    if (s.rfind("fp:", 0) == 0) {
        std::uint64_t p = 0;
        try {
            std::size_t used = 0;
            p = std::stoull(s.substr(3), &used);
            if (used != s.size() - 3) p = 0;
        } catch (const std::exception&) {
            p = 0;
        }
        if (p == 0 || !is_prime(p)) throw std::invalid_argument("field \"" + s + "\": fp:P needs a prime P");
        return FieldCtx::prime(p);
    }
    throw std::invalid_argument("field \"" + s + "\": expected \"rationals\" or \"fp:P\"");
}

std::string field_name(const FieldCtx& f) { return f.is_rational() ? "rationals" : "fp:" + std::to_string(f.p); }

Scalar parse_scalar(const Json& j, const std::string& path) {
    if (j.is_string()) {
        try {
            return Scalar::parse(j.get<std::string>());
        } catch (const std::exception& e) {
            throw InputError(path, "malformed scalar \"" + j.get<std::string>() + "\": " + e.what());
        }
    }
    if (j.is_object()) {
        long p = integer(member(j, "mod", path), at(path, "mod"));
        long v = integer(member(j, "val", path), at(path, "val"));
        if (p < 2 || !is_prime(static_cast<std::uint64_t>(p))) throw InputError(at(path, "mod"), "not a prime");
        return Scalar::mod(static_cast<std::uint64_t>(p), v);
    }
    throw InputError(path, "expected a scalar: \"n/d\" or {\"mod\": p, \"val\": v}");
}

Json scalar_json(const Scalar& s) {
    if (s.is_rational()) return s.str();
    return {{"mod", s.modulus()}, {"val", s.residue()}};
}

// ---- quiver ----

Json quiver_json(const Quiver& q) {
    Json arrows = Json::array();
    for (const auto& a : q.arrows)
        arrows.push_back({{"id", a.id}, {"src", q.vertices[static_cast<std::size_t>(a.src)]}, {"tgt", q.vertices[static_cast<std::size_t>(a.tgt)]}});
    Json out{{"vertices", q.vertices}, {"arrows", arrows}};
    if (!q.star.empty()) {
        Json star = Json::array();
        for (int s : q.star) star.push_back(q.arrows[static_cast<std::size_t>(s)].id);
        out["star"] = star;
    }
    return out;
}

Quiver parse_quiver(const Json& j, const std::string& path) {
    Quiver q;
    q.vertices = strings(member(j, "vertices", path), at(path, "vertices"));
    require_unique(q.vertices, "vertex", at(path, "vertices"));
    const Json& arrows = member(j, "arrows", path);
    const std::string pa = at(path, "arrows");
    for (std::size_t k = 0; k < array(arrows, pa).size(); ++k) {
        const std::string pk = at(pa, k);
        Arrow a;
        a.id = string(member(arrows[k], "id", pk), at(pk, "id"));
        a.src = lookup(q.vertices, string(member(arrows[k], "src", pk), at(pk, "src")), "vertex", at(pk, "src"));
        a.tgt = lookup(q.vertices, string(member(arrows[k], "tgt", pk), at(pk, "tgt")), "vertex", at(pk, "tgt"));
        q.arrows.push_back(a);
    }
    require_unique(arrow_ids(q), "arrow id", pa);
    if (const Json* star = optional_member(j, "star", path)) {
        auto ids = strings(*star, at(path, "star"));
        if (ids.size() != q.arrows.size()) throw InputError(at(path, "star"), "expected one entry per arrow");
        for (std::size_t k = 0; k < ids.size(); ++k) q.star.push_back(lookup(arrow_ids(q), ids[k], "arrow", at(at(path, "star"), k)));
    }
    guarded(path, [&] {
        q.validate();
        return 0;
    });
    return q;
}

// ---- dg algebra ----

Json dg_algebra_json(const DGQuiverAlgebra& a) {
    const Quiver& q = a.gens.quiver;
    Json diff = Json::array();
    for (const auto& [arrow, value] : a.differential)
        if (!value.empty()) diff.push_back({{"arrow", q.arrows[static_cast<std::size_t>(arrow)].id}, {"value", combo_json(q, value)}});
    Json rels = Json::array();
    for (const auto& r : a.relations) rels.push_back(combo_json(q, r));
    return {{"quiver", quiver_json(q)}, {"degrees", a.gens.degree}, {"differential", diff}, {"relations", rels}};
}

DGQuiverAlgebra parse_dg_algebra(const Json& j, const std::string& path) {
    DGQuiverAlgebra a;
    a.gens.quiver = parse_quiver(member(j, "quiver", path), at(path, "quiver"));
    const Quiver& q = a.gens.quiver;
    const Json& deg = member(j, "degrees", path);
    for (std::size_t k = 0; k < array(deg, at(path, "degrees")).size(); ++k)
        a.gens.degree.push_back(static_cast<int>(integer(deg[k], at(at(path, "degrees"), k))));
    if (a.gens.degree.size() != q.arrows.size()) throw InputError(at(path, "degrees"), "expected one degree per arrow");
    if (const Json* diff = optional_member(j, "differential", path)) {
        const std::string pd = at(path, "differential");
        for (std::size_t k = 0; k < array(*diff, pd).size(); ++k) {
            const std::string pk = at(pd, k);
            int arrow = lookup(arrow_ids(q), string(member((*diff)[k], "arrow", pk), at(pk, "arrow")), "arrow", at(pk, "arrow"));
            if (a.differential.count(arrow)) throw InputError(at(pk, "arrow"), "differential given twice");
            PathCombo v = parse_combo(q, member((*diff)[k], "value", pk), at(pk, "value"));
            const Arrow& ar = q.arrows[static_cast<std::size_t>(arrow)];
            for (const auto& [p, s] : v) {
                if (p.src != ar.src || p.tgt != ar.tgt) throw InputError(at(pk, "value"), "endpoints differ from the arrow's");
                if (a.path_degree(p) != a.gens.degree[static_cast<std::size_t>(arrow)] + 1) throw InputError(at(pk, "value"), "differential must raise degree by one");
            }
            a.differential[arrow] = std::move(v);
        }
    }
    if (const Json* rels = optional_member(j, "relations", path))
        for (std::size_t k = 0; k < array(*rels, at(path, "relations")).size(); ++k)
            a.relations.push_back(parse_combo(q, (*rels)[k], at(at(path, "relations"), k)));
    return a;
}

// ---- pairing ----

CyclicPairing PairingDoc::resolve(const AInfCategory& cat) const {
    CyclicPairing p;
    p.dim = dim;
    for (const auto& [x, y, v] : entries) {
        int i = cat.basis_index(x), k = cat.basis_index(y);
        if (i < 0) throw std::invalid_argument("pairing: unknown basis label \"" + x + "\"");
        if (k < 0) throw std::invalid_argument("pairing: unknown basis label \"" + y + "\"");
        p.g[{i, k}] = v.in(cat.field);
    }
    return p;
}

PairingDoc PairingDoc::from(const AInfCategory& cat, const CyclicPairing& p) {
    PairingDoc d;
    d.dim = p.dim;
    for (const auto& [xy, v] : p.g)
        if (!v.is_zero()) d.entries.emplace_back(cat.basis[static_cast<std::size_t>(xy.first)].label, cat.basis[static_cast<std::size_t>(xy.second)].label, v);
    return d;
}

Json pairing_json(const PairingDoc& p) {
    Json entries = Json::array();
    for (const auto& [x, y, v] : p.entries) entries.push_back({{"x", x}, {"y", y}, {"value", scalar_json(v)}});
    return {{"dim", p.dim}, {"entries", entries}};
}

PairingDoc parse_pairing(const Json& j, const std::string& path) {
    PairingDoc p;
    p.dim = static_cast<int>(integer(member(j, "dim", path), at(path, "dim")));
    const Json& e = member(j, "entries", path);
    for (std::size_t k = 0; k < array(e, at(path, "entries")).size(); ++k) {
        const std::string pk = at(at(path, "entries"), k);
        p.entries.emplace_back(string(member(e[k], "x", pk), at(pk, "x")), string(member(e[k], "y", pk), at(pk, "y")),
                               parse_scalar(member(e[k], "value", pk), at(pk, "value")));
    }
    return p;
}

// ---- A-infinity category ----

Json ainf_json(const AInfCategory& c) {
    Json ops = Json::array();
    for (const auto& [n, table] : c.ops)
        for (const auto& [t, out] : table) {
            Json output = Json::array();
            for (const auto& [y, s] : out)
                if (!s.is_zero()) output.push_back({{"elem", c.basis[static_cast<std::size_t>(y)].label}, {"coeff", scalar_json(s)}});
            if (output.empty()) continue;
            Json inputs = Json::array();
            for (int x : t) inputs.push_back(c.basis[static_cast<std::size_t>(x)].label);
            ops.push_back({{"inputs", inputs}, {"output", output}});
        }
    Json out{{"field", field_name(c.field)},   {"objects", c.objects}, {"basis", basis_json(c)}, {"ops", ops},
             {"arity_cap", c.arity_cap},       {"exact_above_cap", c.exact_above_cap}, {"units", units_json(c)}};
    if (c.pairing) out["pairing"] = pairing_json(PairingDoc::from(c, *c.pairing));
    return out;
}

AInfCategory parse_ainf(const Json& j, const std::string& path) {
    AInfCategory c;
    c.field = guarded(at(path, "field"), [&] { return parse_field(string(member(j, "field", path), at(path, "field"))); });
    parse_shape(c, j, path);
    std::vector<std::string> labels;
    for (const auto& b : c.basis) labels.push_back(b.label);
    c.arity_cap = static_cast<int>(integer(member(j, "arity_cap", path), at(path, "arity_cap")));
    if (c.arity_cap < 1) throw InputError(at(path, "arity_cap"), "must be at least 1");
    c.exact_above_cap = boolean(member(j, "exact_above_cap", path), at(path, "exact_above_cap"));
    const Json& ops = member(j, "ops", path);
    const std::string po = at(path, "ops");
    for (std::size_t k = 0; k < array(ops, po).size(); ++k) {
        const std::string pk = at(po, k);
        Tuple t;
        for (const auto& s : strings(member(ops[k], "inputs", pk), at(pk, "inputs"))) t.push_back(lookup(labels, s, "basis label", at(pk, "inputs")));
        if (t.empty()) throw InputError(at(pk, "inputs"), "operations have arity at least 1");
        if (static_cast<int>(t.size()) > c.arity_cap) throw InputError(at(pk, "inputs"), "arity exceeds arity_cap");
        if (!c.composable(t)) throw InputError(at(pk, "inputs"), "inputs are not composable");
        const Json& out = member(ops[k], "output", pk);
        for (std::size_t m = 0; m < array(out, at(pk, "output")).size(); ++m) {
            const std::string pm = at(at(pk, "output"), m);
            int y = lookup(labels, string(member(out[m], "elem", pm), at(pm, "elem")), "basis label", at(pm, "elem"));
            c.add_op(t, y, in_field(parse_scalar(member(out[m], "coeff", pm), at(pm, "coeff")), c.field, at(pm, "coeff")));
        }
    }
    if (const Json* p = optional_member(j, "pairing", path)) {
        PairingDoc doc = parse_pairing(*p, at(path, "pairing"));
        for (std::size_t k = 0; k < doc.entries.size(); ++k)
            std::get<2>(doc.entries[k]) = in_field(std::get<2>(doc.entries[k]), c.field, at(at(at(path, "pairing"), "entries"), k));
        c.pairing = guarded(at(path, "pairing"), [&] { return doc.resolve(c); });
    }
    guarded(path, [&] {
        c.validate();
        return 0;
    });
    return c;
}

// ---- potential ----

Json potential_json(const PotentialDoc& p) {
    Alphabet a = Alphabet::of(p.shape);
    Json terms = Json::array();
    for (const auto& [w, s] : p.f.terms) {
        Json word = Json::array();
        for (int code : w) word.push_back(letter_json(a, code));
        terms.push_back({{"word", word}, {"coeff", scalar_json(s)}});
    }
    Json shape{{"objects", p.shape.objects}, {"basis", basis_json(p.shape)}, {"units", units_json(p.shape)}};
    return {{"shape", shape}, {"cyclic", p.f.cyclic}, {"order_cap", p.f.order_cap}, {"terms", terms}};
}

PotentialDoc parse_potential(const Json& j, const std::string& path) {
    PotentialDoc p;
    parse_shape(p.shape, member(j, "shape", path), at(path, "shape"));
    p.f.cyclic = boolean(member(j, "cyclic", path), at(path, "cyclic"));
    p.f.order_cap = static_cast<int>(integer(member(j, "order_cap", path), at(path, "order_cap")));
    Alphabet a = Alphabet::of(p.shape);
    const Json& terms = member(j, "terms", path);
    const std::string pt = at(path, "terms");
    for (std::size_t k = 0; k < array(terms, pt).size(); ++k) {
        const std::string pk = at(pt, k);
        Word w;
        auto letters = strings(member(terms[k], "word", pk), at(pk, "word"));
        for (std::size_t m = 0; m < letters.size(); ++m) {
            const std::string& s = letters[m];
            const std::string pm = at(at(pk, "word"), m);
            if (s.rfind("const:", 0) == 0) {
                int o = -1;
                try {
                    o = std::stoi(s.substr(6));
                } catch (const std::exception&) {
                }
                if (o < 0 || o >= static_cast<int>(p.shape.objects.size())) throw InputError(pm, "bad constant letter \"" + s + "\"");
                w.push_back(-1 - o);
            } else if (s.rfind("d:", 0) == 0) {
                w.push_back(dtheta(lookup(a.labels, s.substr(2), "letter", pm)));
            } else {
                w.push_back(theta(lookup(a.labels, s, "letter", pm)));
            }
        }
        if (w.empty()) throw InputError(at(pk, "word"), "empty word");
        if (static_cast<int>(w.size()) > p.f.order_cap) throw InputError(at(pk, "word"), "word longer than order_cap");
        Scalar c = parse_scalar(member(terms[k], "coeff", pk), at(pk, "coeff"));
        guarded(pk, [&] {
            if (w.front() >= 0 && !(p.f.cyclic ? word_closed(a, w) : word_composable(a, w))) throw std::invalid_argument("word is not composable");
            add_word(a, p.f, w, c);
            return 0;
        });
    }
    return p;
}

// ---- matrix representation ----

Json matrix_rep_json(const MatrixRep& r) {
    Json mats = Json::array();
    for (const auto& m : r.mats) {
        Json rows = Json::array();
        for (std::size_t i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(scalar_json(m.get(i, k).is_zero() ? Scalar::zero_in(r.field) : m.get(i, k)));
            rows.push_back(row);
        }
        mats.push_back(rows);
    }
    return {{"quiver", quiver_json(r.quiver)}, {"field", field_name(r.field)}, {"d", r.d}, {"mats", mats}};
}

MatrixRep parse_matrix_rep(const Json& j, const std::string& path) {
    Quiver q = parse_quiver(member(j, "quiver", path), at(path, "quiver"));
    FieldCtx f = guarded(at(path, "field"), [&] { return parse_field(string(member(j, "field", path), at(path, "field"))); });
    DimensionVector d;
    const Json& dj = member(j, "d", path);
    for (std::size_t k = 0; k < array(dj, at(path, "d")).size(); ++k) {
        long x = integer(dj[k], at(at(path, "d"), k));
        if (x < 0) throw InputError(at(at(path, "d"), k), "negative dimension");
        d.push_back(x);
    }
    if (d.size() != q.vertices.size()) throw InputError(at(path, "d"), "expected one entry per vertex");
    MatrixRep r = MatrixRep::zero(q, d, f);
    const Json& mats = member(j, "mats", path);
    const std::string pm = at(path, "mats");
    if (array(mats, pm).size() != q.arrows.size()) throw InputError(pm, "expected one matrix per arrow");
    for (std::size_t a = 0; a < q.arrows.size(); ++a) {
        const std::string pa = at(pm, a);
        std::size_t rows = r.mats[a].rows(), cols = r.mats[a].cols();
        const std::string shape = std::to_string(rows) + "x" + std::to_string(cols);
        if (array(mats[a], pa).size() != rows) throw InputError(pa, "expected " + shape + " (rows tgt, columns src)");
        for (std::size_t i = 0; i < rows; ++i) {
            if (array(mats[a][i], at(pa, i)).size() != cols) throw InputError(at(pa, i), "expected " + shape + " (rows tgt, columns src)");
            for (std::size_t k = 0; k < cols; ++k) {
                const std::string pe = at(at(pa, i), k);
                Scalar s = in_field(parse_scalar(mats[a][i][k], pe), f, pe);
                if (!s.is_zero()) r.mats[a].set(i, k, s);
            }
        }
    }
    return r;
}

// ---- HN query ----

Json polynomial_json(const RatPolynomial& p) {
    Json out = Json::array();
    for (const auto& c : p.coeffs()) out.push_back(scalar_json(c));
    return out;
}

RatPolynomial parse_polynomial(const Json& j, const std::string& path) {
    std::vector<Scalar> c;
    for (std::size_t k = 0; k < array(j, path).size(); ++k) {
        Scalar s = parse_scalar(j[k], at(path, k));
        if (!s.is_rational()) throw InputError(at(path, k), "rational coefficient required");
        c.push_back(s);
    }
    return RatPolynomial(c);
}

Json hn_query_json(const HNQuery& q) {
    Json out{{"p", polynomial_json(q.p)}, {"q_bound", polynomial_json(q.q_bound)}};
    Json lattice = Json::array();
    for (const auto& l : q.lattice) lattice.push_back(scalar_json(l));
    out["lattice"] = lattice;
    if (q.bogomolov) {
        Json table = Json::array();
        for (const auto& [key, b] : q.bogomolov->table)
            table.push_back({{"a2", scalar_json(key.first)}, {"a1", scalar_json(key.second)}, {"bound", scalar_json(b)}});
        Json bog{{"table", table}};
        if (q.bogomolov->use_formula)
            bog["formula"] = {{"kappa", scalar_json(q.bogomolov->kappa)}, {"lambda", scalar_json(q.bogomolov->lambda)}, {"nu", scalar_json(q.bogomolov->nu)}};
        out["bogomolov"] = bog;
    }
    return out;
}

HNQuery parse_hn_query(const Json& j, const std::string& path) {
    HNQuery q;
    q.p = parse_polynomial(member(j, "p", path), at(path, "p"));
    q.q_bound = parse_polynomial(member(j, "q_bound", path), at(path, "q_bound"));
    if (const Json* l = optional_member(j, "lattice", path))
        for (std::size_t k = 0; k < array(*l, at(path, "lattice")).size(); ++k) q.lattice.push_back(parse_scalar((*l)[k], at(at(path, "lattice"), k)));
    if (const Json* b = optional_member(j, "bogomolov", path)) {
        const std::string pb = at(path, "bogomolov");
        BogomolovParam bog;
        if (const Json* t = optional_member(*b, "table", pb))
            for (std::size_t k = 0; k < array(*t, at(pb, "table")).size(); ++k) {
                const std::string pk = at(at(pb, "table"), k);
                bog.table[{parse_scalar(member((*t)[k], "a2", pk), at(pk, "a2")), parse_scalar(member((*t)[k], "a1", pk), at(pk, "a1"))}] =
                    parse_scalar(member((*t)[k], "bound", pk), at(pk, "bound"));
            }
        if (const Json* f = optional_member(*b, "formula", pb)) {
            const std::string pf = at(pb, "formula");
            bog.use_formula = true;
            bog.kappa = parse_scalar(member(*f, "kappa", pf), at(pf, "kappa"));
            bog.lambda = parse_scalar(member(*f, "lambda", pf), at(pf, "lambda"));
            bog.nu = parse_scalar(member(*f, "nu", pf), at(pf, "nu"));
        }
        q.bogomolov = bog;
    }
    try {
        std::string why;
        hn_type_admissible(q, {q.p}, &why);  // validates degrees and the lattice shape
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        std::string field;
        for (const char* f : {"p", "q_bound", "lattice"})
            if (msg.rfind(std::string(f) + ":", 0) == 0) field = f;
        throw InputError(field.empty() ? path : at(path, field), msg);
    }
    return q;
}

// ---- envelope ----

Json envelope(const std::string& kind, Json payload) {
    return {{"kind", kind}, {"version", kVersion}, {"conventions", conventions()}, {"payload", std::move(payload)}};
}

Json to_json(const Document& d) {
    return std::visit(
        [&](const auto& p) -> Json {
            using T = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<T, Quiver>) return envelope(d.kind, quiver_json(p));
            if constexpr (std::is_same_v<T, DGQuiverAlgebra>) return envelope(d.kind, dg_algebra_json(p));
            if constexpr (std::is_same_v<T, AInfCategory>) return envelope(d.kind, ainf_json(p));
            if constexpr (std::is_same_v<T, PairingDoc>) return envelope(d.kind, pairing_json(p));
            if constexpr (std::is_same_v<T, PotentialDoc>) return envelope(d.kind, potential_json(p));
            if constexpr (std::is_same_v<T, MatrixRep>) return envelope(d.kind, matrix_rep_json(p));
            if constexpr (std::is_same_v<T, HNQuery>) return envelope(d.kind, hn_query_json(p));
        },
        d.payload);
}

Document parse_document(const Json& j) {
    if (!j.is_object()) throw InputError("", "expected a document object");
    std::string kind = string(member(j, "kind", ""), "/kind");
    if (std::find(kKinds.begin(), kKinds.end(), kind) == kKinds.end()) throw InputError("/kind", "unknown kind \"" + kind + "\"");
    if (integer(member(j, "version", ""), "/version") != kVersion) throw InputError("/version", "unsupported version (expected " + std::to_string(kVersion) + ")");
    const Json& conv = member(j, "conventions", "");
    const Json expected = conventions();
    for (const auto& [key, value] : expected.items()) {
        const std::string pc = "/conventions/" + key;
        if (string(member(conv, key, "/conventions"), pc) != value.get<std::string>())
            throw InputError(pc, "unsupported convention (expected \"" + value.get<std::string>() + "\")");
    }
    const Json& p = member(j, "payload", "");
    const std::string pp = "/payload";
    if (kind == "quiver") return {kind, parse_quiver(p, pp)};
    if (kind == "dg_algebra") return {kind, parse_dg_algebra(p, pp)};
    if (kind == "ainf_category") return {kind, parse_ainf(p, pp)};
    if (kind == "pairing") return {kind, parse_pairing(p, pp)};
    if (kind == "potential") return {kind, parse_potential(p, pp)};
    if (kind == "matrix_rep") return {kind, parse_matrix_rep(p, pp)};
    return {kind, parse_hn_query(p, pp)};
}

Document read_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("", "cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError("", std::string("malformed JSON: ") + e.what());
    }
    return parse_document(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace twocy::io
