#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <sstream>

#include "twocy/cli.hpp"
#include "twocy/dgcat.hpp"
#include "twocy/hochschild.hpp"

namespace twocy::cli {

using io::Json;

const std::vector<std::string> kSubcommands{"check-ainf", "minimal-model", "strictify", "formality",    "hochschild", "semisimplify",
                                            "stability",  "moment-check",  "local-model", "euler-compare", "hn-enum"};

namespace {

// Precedence: input error, then property failure, then truncation.
int rank(int code) { return code == Exit::input_error ? 3 : code == Exit::property_failure ? 2 : code == Exit::truncated ? 1 : 0; }

class Context {
   public:
    Context(const std::string& sub, const Options& opts) : opts_(opts) {
        report_["subcommand"] = sub;
        report_["seed"] = opts.seed;
        report_["verdict"] = "pass";
        report_["exit_code"] = 0;
        report_["witnesses"] = Json::array();
        report_["truncation"] = {{"order_cap", opts.order_cap}, {"insufficient", false}, {"notes", Json::array()}};
        report_["result"] = Json::object();
        report_["timings"] = Json::object();
    }

    const Options& opts() const { return opts_; }
    Json& result() { return report_["result"]; }

    template <class F>
    auto timed(const std::string& stage, F&& f) {
        auto t0 = std::chrono::steady_clock::now();
        if constexpr (std::is_void_v<decltype(f())>) {
            f();
            stamp(stage, t0);
        } else {
            auto out = f();
            stamp(stage, t0);
            return out;
        }
    }

    void witness(Json w) { report_["witnesses"].push_back(std::move(w)); }
    void fail() { set(property_failure, "fail"); }
    void truncate(const std::string& note) {
        report_["truncation"]["insufficient"] = true;
        report_["truncation"]["notes"].push_back(note);
        set(truncated, "truncated");
    }
    void note(const std::string& n) { report_["truncation"]["notes"].push_back(n); }
    void input_error(const std::string& path, const std::string& message) {
        set(input_error_code(), "input-error");
        report_["error"] = {{"path", path.empty() ? std::string("/") : path}, {"message", message}};
    }

    RunResult finish() { return {exit_, report_}; }

   private:
    const Options& opts_;
    Json report_;
    int exit_ = 0;

    static int input_error_code() { return Exit::input_error; }
    void set(int code, const std::string& verdict) {
        if (rank(code) > rank(exit_)) {
            exit_ = code;
            report_["exit_code"] = code;
            report_["verdict"] = verdict;
        }
    }
    void stamp(const std::string& stage, std::chrono::steady_clock::time_point t0) {
        if (!opts_.timings) return;
        double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report_["timings"][stage] = ms;
    }
};

// ---- helpers ----

template <class T>
const T& expect(const std::vector<io::Document>& docs, std::size_t k, const std::string& kind) {
    if (docs.size() <= k) throw io::InputError("", "expected a " + kind + " document as input " + std::to_string(k + 1));
    if (docs[k].kind != kind) throw io::InputError("/kind", "expected \"" + kind + "\", got \"" + docs[k].kind + "\"");
    return std::get<T>(docs[k].payload);
}

Json ext_table(const AInfCategory& cat) {
    std::map<std::tuple<int, int, int>, int> dims;
    for (const auto& b : cat.basis) ++dims[{b.src, b.tgt, b.degree}];
    Json out = Json::array();
    for (const auto& [k, n] : dims)
        out.push_back({{"src", cat.objects[static_cast<std::size_t>(std::get<0>(k))]},
                       {"tgt", cat.objects[static_cast<std::size_t>(std::get<1>(k))]},
                       {"degree", std::get<2>(k)},
                       {"dim", n}});
    return out;
}

Json ext_table(const std::vector<std::string>& objects, const std::map<std::tuple<int, int, int>, int>& dims) {
    Json out = Json::array();
    for (const auto& [k, n] : dims)
        if (n)
            out.push_back({{"src", objects[static_cast<std::size_t>(std::get<0>(k))]},
                           {"tgt", objects[static_cast<std::size_t>(std::get<1>(k))]},
                           {"degree", std::get<2>(k)},
                           {"dim", n}});
    return out;
}

Json check_witnesses(const CheckReport& r) {
    Json out = Json::array();
    for (const auto& w : r.witnesses) out.push_back({{"arity", w.arity}, {"text", w.text}});
    return out;
}

// Minimal category to work on: the input category, or for a dg algebra the
// Ext category of its simples (bar dual at the truncation weight, then
// homotopy transfer).
std::shared_ptr<AInfCategory> category_input(Context& ctx, const std::vector<io::Document>& docs, bool need_minimal) {
    if (docs.empty()) throw io::InputError("", "expected an ainf_category or dg_algebra document");
    if (docs[0].kind == "ainf_category") {
        auto cat = std::make_shared<AInfCategory>(std::get<AInfCategory>(docs[0].payload));
        if (need_minimal && !cat->is_minimal()) {
            cat = ctx.timed("minimal_model", [&] { return minimal_model(cat, nullptr, std::max(ctx.opts().order_cap, 2)).min; });
            ctx.note("input was not minimal; used its minimal model");
        }
        return cat;
    }
    if (docs[0].kind == "dg_algebra") {
        const auto& alg = std::get<DGQuiverAlgebra>(docs[0].payload);
        const int w = ctx.opts().weight;
        ctx.result()["ext_source"] = {{"construction", "bar dual of the path category, transferred"}, {"weight", w}};
        return ctx.timed("ext_model", [&] {
            auto a = path_category(alg, w);
            auto dual = std::make_shared<AInfCategory>(bar_dual_category(a, path_category_weights(alg, w), w));
            return minimal_model(dual, nullptr, ctx.opts().order_cap).min;
        });
    }
    throw io::InputError("/kind", "expected ainf_category or dg_algebra, got \"" + docs[0].kind + "\"");
}

MatrixRep rep_input(Context& ctx, const std::vector<io::Document>& docs) {
    MatrixRep rep = expect<MatrixRep>(docs, 0, "matrix_rep");
    if (ctx.opts().field && *ctx.opts().field != rep.field) {
        if (!rep.field.is_rational()) throw io::InputError("/payload/field", "cannot change a prime field");
        try {
            rep = rep.reduce(*ctx.opts().field);
        } catch (const FieldError& e) {
            throw io::InputError("/payload/mats", std::string("bad reduction: ") + e.what());
        }
    }
    return rep;
}

DimensionVector dim_option(const Context& ctx, std::size_t n) {
    if (ctx.opts().dim.size() != n)
        throw io::InputError("", "--dim: expected " + std::to_string(n) + " entries, got " + std::to_string(ctx.opts().dim.size()));
    for (long x : ctx.opts().dim)
        if (x < 0) throw io::InputError("", "--dim: negative entry");
    return ctx.opts().dim;
}

Json potential_out(const AInfCategory& cat, const NCFunction& f) {
    io::PotentialDoc p{cat, f};
    return io::potential_json(p);
}

Json matrix_json(const SparseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(io::scalar_json(m.get(i, k)));
        rows.push_back(row);
    }
    return rows;
}

// ---- subcommands ----

void check_ainf(Context& ctx, const std::vector<io::Document>& docs) {
    if (!docs.empty() && docs[0].kind == "dg_algebra") {
        auto r = ctx.timed("check_dg", [&] { return check_dg(std::get<DGQuiverAlgebra>(docs[0].payload), ctx.opts().order_cap); });
        ctx.result()["d_squared_zero"] = r.ok;
        if (!r.ok) {
            ctx.witness({{"text", r.message}});
            ctx.fail();
        }
        return;
    }
    const auto& cat = expect<AInfCategory>(docs, 0, "ainf_category");
    const int cap = ctx.opts().order_cap;
    int upto = cap;
    if (!cat.known(cap)) {
        upto = cat.arity_cap;
        ctx.truncate("b_n unknown above arity " + std::to_string(cat.arity_cap) + "; relations checked up to " + std::to_string(upto));
    }
    auto r = ctx.timed("relations", [&] { return check_relations(cat, upto); });
    ctx.result()["relations_checked_up_to"] = upto;
    ctx.result()["relations"] = r.pass;
    for (auto& w : check_witnesses(r)) ctx.witness(w);
    auto u = ctx.timed("unitality", [&] { return check_unitality(cat); });
    ctx.result()["unitality"] = to_string(u.kind);
    ctx.result()["minimal"] = cat.is_minimal();
    if (!r.pass) ctx.fail();
}

void minimal_model_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    const int cap = ctx.opts().order_cap;
    std::shared_ptr<AInfCategory> min;
    std::optional<CheckReport> functor;
    if (!docs.empty() && docs[0].kind == "ainf_category") {
        auto cat = std::make_shared<AInfCategory>(std::get<AInfCategory>(docs[0].payload));
        auto mm = ctx.timed("transfer", [&] { return minimal_model(cat, nullptr, cap); });
        min = mm.min;
        functor = ctx.timed("functor", [&] { return check_functor(mm.incl, cap); });
    } else {
        min = category_input(ctx, docs, true);
    }
    auto r = ctx.timed("relations", [&] { return check_relations(*min, cap); });
    ctx.result()["ext_dims"] = ext_table(*min);
    ctx.result()["relations"] = r.pass;
    for (auto& w : check_witnesses(r)) ctx.witness(w);
    if (functor) {
        ctx.result()["inclusion_functor"] = functor->pass;
        for (auto& w : check_witnesses(*functor)) ctx.witness(w);
    }
    ctx.result()["category"] = io::envelope("ainf_category", io::ainf_json(*min));
    if (!r.pass || (functor && !functor->pass)) ctx.fail();
}

void attach_pairing(AInfCategory& cat, const std::vector<io::Document>& docs) {
    if (docs.size() > 1) {
        const auto& p = expect<io::PairingDoc>(docs, 1, "pairing");
        try {
            cat.pairing = p.resolve(cat);
        } catch (const std::invalid_argument& e) {
            throw io::InputError("/payload/entries", e.what());
        }
    }
    if (!cat.pairing) cat.pairing = trace_pairing(cat);
}

void strictify_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    auto cat = category_input(ctx, docs, true);
    attach_pairing(*cat, docs);
    if (!cat->pairing) throw io::InputError("/payload/pairing", "no cyclic pairing given and the trace pairing is not defined");
    const int cap = ctx.opts().order_cap;
    auto s = ctx.timed("strictify", [&] { return strictify_units(*cat, cap); });
    Alphabet a = Alphabet::of(*s.cat);
    bool reduced = is_reduced(a, s.potential.orders_from(4));
    ctx.result()["identity"] = s.identity;
    ctx.result()["omega_preserved"] = s.omega_preserved;
    ctx.result()["reduced_from_order_4"] = reduced;
    ctx.result()["potential_before"] = potential_out(*cat, s.potential_before);
    ctx.result()["potential"] = potential_out(*s.cat, s.potential);
    ctx.result()["category"] = io::envelope("ainf_category", io::ainf_json(*s.cat));
    if (!s.omega_preserved) ctx.witness({{"text", "symplectic form not preserved"}});
    if (!reduced) ctx.witness({{"text", "potential not reduced from order 4"}});
    if (!s.omega_preserved || !reduced) ctx.fail();
}

void formality_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    auto cat = category_input(ctx, docs, true);
    attach_pairing(*cat, docs);
    auto c = ctx.timed("certify", [&] { return certify_sigma_formality(*cat, ctx.opts().order_cap); });
    Json& r = ctx.result();
    r["certified"] = c.pass;
    r["genus"] = c.genus;
    r["ext_dims"] = ext_table(cat->objects, c.ext_dims);
    r["cubic"] = c.cubic;
    r["argument"] = c.argument;
    if (c.pass) r["potential"] = potential_out(*c.strict.cat, c.strict.potential);
    for (const auto& f : c.failures) ctx.witness({{"text", f}});
    if (!c.pass) ctx.fail();
}

void hochschild_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    auto cat = category_input(ctx, docs, false);
    // chains of length n need b_k for k <= n + 1
    int n = ctx.opts().order_cap;
    if (!cat->known(n + 1)) n -= 1;
    if (n < 1 || !cat->known(n + 1)) throw TruncationError("hochschild: b_k unknown up to length " + std::to_string(n + 1));
    for (bool cyclic : {false, true}) {
        auto h = ctx.timed(cyclic ? "cyclic" : "hochschild", [&] { return windowed_homology(*cat, n, 1, cyclic); });
        Json dims = Json::array();
        for (const auto& [deg, d] : h.dims) dims.push_back({{"degree", deg}, {"dim", d}, {"stable", h.stable.at(deg)}});
        ctx.result()[cyclic ? "cyclic" : "hochschild"] = {{"max_length", h.max_length}, {"margin", h.margin}, {"dims", dims}};
    }
}

void semisimplify_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    MatrixRep rep = rep_input(ctx, docs);
    auto s = ctx.timed("semisimplify", [&] { return semisimplify_detailed(rep); });
    Json layers = Json::array();
    for (const auto& l : s.filtration.layers) layers.push_back(l);
    ctx.result()["radical_layers"] = layers;
    ctx.result()["rep"] = io::envelope("matrix_rep", io::matrix_rep_json(s.out));
}

void stability_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    MatrixRep rep = rep_input(ctx, docs);
    if (rep.field.is_rational()) throw io::InputError("/payload/field", "stability uses the finite-field oracle; pass --field fp:P");
    if (ctx.opts().zeta.size() != rep.d.size())
        throw io::InputError("", "--zeta: expected " + std::to_string(rep.d.size()) + " entries, got " + std::to_string(ctx.opts().zeta.size()));
    auto v = ctx.timed("subreps", [&] { return semistable_bruteforce(rep, ctx.opts().zeta); });
    const char* kind = v.kind == Semistability::stable ? "stable" : v.kind == Semistability::semistable ? "semistable" : "unstable";
    ctx.result()["stability"] = kind;
    ctx.result()["slope"] = io::scalar_json(slope(rep.d, ctx.opts().zeta));
    ctx.result()["subreps_checked"] = v.subreps_seen;
    if (v.destabilizer) {
        ctx.witness({{"text", "destabilizing subrepresentation"},
                     {"d", v.destabilizer->d},
                     {"slope", io::scalar_json(slope(v.destabilizer->d, ctx.opts().zeta))}});
        ctx.fail();
    }
}

void moment_check_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    MatrixRep rep = rep_input(ctx, docs);
    auto mu = ctx.timed("moment_map", [&] { return moment_map(rep); });
    Json values = Json::array();
    bool zero = true;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        values.push_back({{"vertex", rep.quiver.vertices[i]}, {"value", matrix_json(mu[i])}});
        if (!mu[i].is_zero()) {
            zero = false;
            ctx.witness({{"text", "moment map nonzero at vertex " + rep.quiver.vertices[i]}, {"value", matrix_json(mu[i])}});
        }
    }
    ctx.result()["moment_map"] = values;
    ctx.result()["on_zero_fiber"] = zero;
    if (!ctx.opts().q.empty()) {
        auto m = ctx.timed("multiplicative", [&] { return eval_multiplicative(rep, ctx.opts().q); });
        ctx.result()["multiplicative"] = m.pass;
        for (const auto& r : m.residuals) ctx.witness({{"text", "multiplicative relation fails at " + r.label}, {"value", matrix_json(r.residual)}});
        zero = zero && m.pass;
    }
    if (!zero) ctx.fail();
}

// Sigma check shared by local-model and euler-compare; false after reporting.
bool sigma_ok(Context& ctx, const SigmaCertificate& cert) {
    ctx.result()["sigma"] = cert.pass;
    ctx.result()["genus"] = cert.genus;
    if (cert.pass) return true;
    for (const auto& f : cert.failures) ctx.witness({{"text", f}});
    ctx.fail();
    return false;
}

void local_model_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    auto cat = category_input(ctx, docs, true);
    const DimensionVector d = dim_option(ctx, cat->objects.size());
    auto cert = verify_sigma(*cat);
    if (!sigma_ok(ctx, cert)) return;
    int cap = ctx.opts().order_cap;
    if (!cat->known(cap)) {
        cap = cat->arity_cap;
        ctx.note("operations known up to arity " + std::to_string(cap));
    }
    bool cubic = false;
    if (cat->field.is_rational()) {
        auto fc = ctx.timed("certify", [&] { return certify_sigma_formality(*cat, ctx.opts().order_cap); });
        cubic = fc.pass && fc.cubic;
    }
    auto frame = ctx.timed("darboux", [&] { return darboux_frame(*cat); });
    auto p = ctx.timed("presentation", [&] { return mc_presentation(*cat, d, cap, cubic); });
    auto eq = ctx.timed("equations", [&] { return arrow_equations(p, frame); });
    Json& r = ctx.result();
    r["quiver"] = io::envelope("quiver", io::quiver_json(frame.quiver));
    Json scale = Json::array();
    for (const auto& s : frame.scale) scale.push_back(io::scalar_json(s));
    r["scale"] = scale;
    r["d"] = d;
    r["arity_cap"] = cap;
    r["exact"] = p.exact;
    r["cubic_certified"] = cubic;
    r["variables"] = eq.variables;
    Json eqs = Json::array();
    for (const auto& [label, e] : eq.equations) eqs.push_back({{"entry", label}, {"equation", e.str(eq.variables)}});
    r["equations"] = eqs;
    if (!p.exact) ctx.truncate("MC equations cover arities <= " + std::to_string(cap) + " and higher arities are not certified to vanish");
}

void euler_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    auto cat = category_input(ctx, docs, true);
    const DimensionVector d = dim_option(ctx, cat->objects.size());
    auto cert = verify_sigma(*cat);
    if (!sigma_ok(ctx, cert)) return;
    Quiver q = docs.size() > 1 ? expect<Quiver>(docs, 1, "quiver") : ext_quiver_halve(cert);
    EulerComparison e;
    try {
        e = euler_compare(q, d, cert);
    } catch (const std::invalid_argument& ex) {
        throw io::InputError("/payload", ex.what());
    }
    ctx.result()["quiver"] = io::envelope("quiver", io::quiver_json(q));
    ctx.result()["d"] = d;
    ctx.result()["twice_euler_form"] = io::scalar_json(e.lhs);
    ctx.result()["ext_alternating_sum"] = io::scalar_json(e.rhs);
    if (!e.pass) {
        ctx.witness({{"text", "2 chi(d, d) = " + e.lhs.str() + " but the Ext sum is " + e.rhs.str()}});
        ctx.fail();
    }
}

void hn_cmd(Context& ctx, const std::vector<io::Document>& docs) {
    const auto& q = expect<HNQuery>(docs, 0, "hn_query");
    std::vector<HNType> types;
    try {
        types = ctx.timed("enumerate", [&] { return hn_enumerate(q); });
    } catch (const std::invalid_argument& e) {
        throw io::InputError("/payload", e.what());
    }
    Json out = Json::array();
    for (const auto& t : types) {
        Json parts = Json::array();
        std::string text;
        for (const auto& p : t) {
            parts.push_back(io::polynomial_json(p));
            text += (text.empty() ? "" : ", ") + p.str();
        }
        out.push_back({{"parts", parts}, {"text", "(" + text + ")"}});
        std::string why;
        if (!hn_type_admissible(q, t, &why)) {
            ctx.witness({{"text", "returned type fails re-verification: " + why}});
            ctx.fail();
        }
    }
    ctx.result()["count"] = types.size();
    ctx.result()["types"] = out;
}

using Handler = std::function<void(Context&, const std::vector<io::Document>&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> h{
        {"check-ainf", check_ainf},         {"minimal-model", minimal_model_cmd}, {"strictify", strictify_cmd},
        {"formality", formality_cmd},       {"hochschild", hochschild_cmd},       {"semisimplify", semisimplify_cmd},
        {"stability", stability_cmd},       {"moment-check", moment_check_cmd},   {"local-model", local_model_cmd},
        {"euler-compare", euler_cmd},       {"hn-enum", hn_cmd}};
    return h;
}

}  // namespace

RunResult run_documents(const std::string& subcommand, const Options& opts, const std::vector<io::Document>& docs) {
    Context ctx(subcommand, opts);
    auto it = handlers().find(subcommand);
    try {
        if (it == handlers().end()) throw io::InputError("", "unknown subcommand \"" + subcommand + "\"");
        if (opts.order_cap < 2) throw io::InputError("", "--order-cap must be at least 2");
        it->second(ctx, docs);
    } catch (const io::InputError& e) {
        ctx.input_error(e.path(), e.detail());
    } catch (const TruncationError& e) {
        ctx.truncate(e.what());
    } catch (const FieldError& e) {
        ctx.input_error("", e.what());
    } catch (const std::invalid_argument& e) {
        ctx.input_error("", e.what());
    } catch (const std::exception& e) {
        ctx.input_error("", std::string("internal: ") + e.what());
    }
    return ctx.finish();
}

RunResult run(const std::string& subcommand, const Options& opts, const std::vector<std::string>& inputs) {
    std::vector<io::Document> docs;
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        try {
            docs.push_back(io::read_document(inputs[k]));
        } catch (const io::InputError& e) {
            Context ctx(subcommand, opts);
            ctx.input_error(e.path(), e.detail());
            auto r = ctx.finish();
            r.report["error"]["input"] = std::filesystem::path(inputs[k]).filename().string();
            return r;
        }
    }
    return run_documents(subcommand, opts, docs);
}

RunResult run_batch(const std::string& subcommand, const Options& opts, const std::string& dir) {
    std::vector<std::filesystem::path> files;
    std::error_code ec;
    for (const auto& e : std::filesystem::directory_iterator(dir, ec))
        if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
    RunResult out;
    if (ec) {
        Context ctx(subcommand, opts);
        ctx.input_error("", "cannot read directory " + dir);
        return ctx.finish();
    }
    std::sort(files.begin(), files.end());
    Json entries = Json::array();
    for (const auto& f : files) {
        auto r = run(subcommand, opts, {f.string()});
        if (rank(r.exit) > rank(out.exit)) out.exit = r.exit;
        entries.push_back({{"file", f.filename().string()}, {"exit_code", r.exit}, {"report", r.report}});
    }
    out.report = {{"subcommand", subcommand}, {"batch", entries}, {"exit_code", out.exit}};
    return out;
}

std::string render_text(const Json& report) {
    std::ostringstream os;
    auto one = [&](const Json& r) {
        os << r.value("subcommand", "") << ": " << r.value("verdict", "") << " (exit " << r.value("exit_code", 0) << ")\n";
        if (r.contains("error")) os << "  error at " << r["error"].value("path", "/") << ": " << r["error"].value("message", "") << "\n";
        const Json witnesses = r.value("witnesses", Json::array());
        for (const auto& w : witnesses) os << "  witness: " << w.value("text", w.dump()) << "\n";
        const Json notes = r.contains("truncation") ? r["truncation"].value("notes", Json::array()) : Json::array();
        for (const auto& n : notes) os << "  note: " << n.get<std::string>() << "\n";
        const Json result = r.value("result", Json::object());
        for (const auto& [k, v] : result.items()) {
            if (v.is_object() && v.contains("kind")) {
                os << "  " << k << ": <" << v["kind"].get<std::string>() << " document>\n";
                continue;
            }
            os << "  " << k << ": " << v.dump() << "\n";
        }
        const Json timings = r.value("timings", Json::object());
        for (const auto& [k, v] : timings.items()) os << "  time " << k << ": " << v.dump() << " ms\n";
    };
    if (report.contains("batch")) {
        for (const auto& e : report["batch"]) {
            os << "== " << e["file"].get<std::string>() << "\n";
            one(e["report"]);
        }
    } else {
        one(report);
    }
    return os.str();
}

}  // namespace twocy::cli
