#include <functional>
#include <sstream>

#include "twocy/koszul.hpp"
#include "twocy/nccalc.hpp"

namespace twocy {

Alphabet Alphabet::of(const AInfCategory& cat) {
    Alphabet a;
    a.objects = cat.objects.size();
    for (const auto& b : cat.basis) {
        a.labels.push_back(b.label);
        a.src.push_back(b.src);
        a.tgt.push_back(b.tgt);
        a.degree.push_back(b.degree);
        a.unit.push_back(false);
    }
    for (const auto& [o, e] : cat.units) a.unit[static_cast<std::size_t>(e)] = true;
    return a;
}

namespace {

bool is_constant(const Word& w) { return w.size() == 1 && w[0] < 0; }
int constant_object(const Word& w) { return -1 - w[0]; }

int code_tgt(const Alphabet& a, int c) { return a.tgt[static_cast<std::size_t>(letter_of(c))]; }
int code_src(const Alphabet& a, int c) { return a.src[static_cast<std::size_t>(letter_of(c))]; }

int word_tgt(const Alphabet& a, const Word& w) { return is_constant(w) ? constant_object(w) : code_tgt(a, w.front()); }
int word_src(const Alphabet& a, const Word& w) { return is_constant(w) ? constant_object(w) : code_src(a, w.back()); }

std::vector<std::pair<int, int>> bidegrees(const Alphabet& a, const Word& w) {
    std::vector<std::pair<int, int>> out;
    for (int c : w) out.push_back({a.internal(c), is_d(c) ? 1 : 0});
    return out;
}

// u v, or nullopt when not composable.
std::optional<Word> join(const Alphabet& a, const Word& u, const Word& v) {
    if (u.empty()) return v;
    if (v.empty()) return u;
    if (word_src(a, u) != word_tgt(a, v)) return std::nullopt;
    if (is_constant(u)) return v;
    if (is_constant(v)) return u;
    Word w = u;
    w.insert(w.end(), v.begin(), v.end());
    return w;
}

void add_raw(Terms& t, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    auto it = t.find(w);
    if (it == t.end()) {
        t.emplace(w, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t.erase(it);
}

using ImageFn = std::function<const Terms*(int)>;

// Applies the derivation with letter images given by image and bidegree
// parity (pd, qd) to every word of f.
NCForm derive(const Alphabet& a, const NCForm& f, const ImageFn& image, int pd, int qd, int cap) {
    NCForm out;
    out.cyclic = f.cyclic;
    out.order_cap = cap;
    out.truncated = f.truncated;
    for (const auto& [w, c] : f.terms) {
        if (is_constant(w)) continue;
        long p_pre = 0, q_pre = 0;
        for (std::size_t r = 0; r < w.size(); ++r) {
            const Terms* img = image(w[r]);
            if (img) {
                Scalar s = c * Scalar(swap_sign(pd, p_pre) * swap_sign(qd, q_pre));
                Word pre(w.begin(), w.begin() + static_cast<long>(r));
                Word suf(w.begin() + static_cast<long>(r) + 1, w.end());
                for (const auto& [u, k] : *img) {
                    auto left = join(a, pre, u);
                    if (!left) continue;
                    auto full = join(a, *left, suf);
                    if (!full) continue;
                    if (word_order(*full) > cap) {
                        out.truncated = true;
                        continue;
                    }
                    add_word(a, out, *full, s * k);
                }
            }
            p_pre += a.internal(w[r]);
            q_pre += is_d(w[r]) ? 1 : 0;
        }
    }
    return out;
}

Terms d_terms(const Alphabet& a, const Terms& t, int cap) {
    NCForm f;
    f.terms = t;
    f.order_cap = cap;
    return de_rham(a, f).terms;
}

}  // namespace

int word_order(const Word& w) { return is_constant(w) ? 0 : static_cast<int>(w.size()); }

std::pair<int, int> word_bidegree(const Alphabet& a, const Word& w) {
    if (is_constant(w)) return {0, 0};
    int p = 0, q = 0;
    for (int c : w) {
        p += a.internal(c);
        q += is_d(c) ? 1 : 0;
    }
    return {p, q};
}

bool word_composable(const Alphabet& a, const Word& w) {
    if (is_constant(w)) return true;
    for (std::size_t k = 0; k + 1 < w.size(); ++k)
        if (code_src(a, w[k]) != code_tgt(a, w[k + 1])) return false;
    return true;
}

bool word_closed(const Alphabet& a, const Word& w) { return word_composable(a, w) && word_src(a, w) == word_tgt(a, w); }

std::string word_str(const Alphabet& a, const Word& w) {
    if (is_constant(w)) return "1@" + std::to_string(constant_object(w));
    std::string s;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) s += " ";
        s += (is_d(w[k]) ? "d" : "") + std::string("t(") + a.labels[static_cast<std::size_t>(letter_of(w[k]))] + ")";
    }
    return s;
}

std::string form_str(const Alphabet& a, const NCForm& f) {
    if (f.terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : f.terms) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ") " << word_str(a, w);
    }
    return os.str();
}

NCForm NCForm::order(int k) const {
    NCForm out = *this;
    out.terms.clear();
    for (const auto& [w, c] : terms)
        if (word_order(w) == k) out.terms.emplace(w, c);
    return out;
}

NCForm NCForm::orders_from(int k) const {
    NCForm out = *this;
    out.terms.clear();
    for (const auto& [w, c] : terms)
        if (word_order(w) >= k) out.terms.emplace(w, c);
    return out;
}

void add_word(const Alphabet& a, NCForm& f, const Word& w, const Scalar& c) {
    if (c.is_zero()) return;
    if (word_order(w) > f.order_cap) {
        f.truncated = true;
        return;
    }
    if (!f.cyclic || is_constant(w)) {
        add_raw(f.terms, w, c);
        return;
    }
    if (!word_closed(a, w)) return;  // open words vanish in the cyclic quotient
    auto rep = cyclic_canonical(w, bidegrees(a, w));
    if (!rep) return;
    add_raw(f.terms, rotate_word(w, rep->shift), c * Scalar(rep->sign));
}

NCForm make_form(const Alphabet& a, const Terms& t, bool cyclic, int order_cap) {
    NCForm f;
    f.cyclic = cyclic;
    f.order_cap = order_cap;
    for (const auto& [w, c] : t) add_word(a, f, w, c);
    return f;
}

NCForm operator+(const NCForm& x, const NCForm& y) {
    NCForm out = x;
    out.truncated = x.truncated || y.truncated;
    for (const auto& [w, c] : y.terms) add_raw(out.terms, w, c);
    return out;
}

NCForm scaled(const NCForm& f, const Scalar& s) {
    NCForm out = f;
    out.terms.clear();
    for (const auto& [w, c] : f.terms) add_raw(out.terms, w, c * s);
    return out;
}

NCForm operator-(const NCForm& x, const NCForm& y) { return x + scaled(y, Scalar(-1)); }

NCForm multiply(const Alphabet& a, const NCForm& x, const NCForm& y) {
    NCForm out;
    out.order_cap = std::min(x.order_cap, y.order_cap);
    out.truncated = x.truncated || y.truncated;
    for (const auto& [u, c] : x.terms)
        for (const auto& [v, k] : y.terms) {
            auto w = join(a, u, v);
            if (w) add_word(a, out, *w, c * k);
        }
    return out;
}

NCForm cyclic_image(const Alphabet& a, const NCForm& f) {
    NCForm out;
    out.cyclic = true;
    out.order_cap = f.order_cap;
    out.truncated = f.truncated;
    for (const auto& [w, c] : f.terms) add_word(a, out, w, c);
    return out;
}

NCForm de_rham(const Alphabet& a, const NCForm& f) {
    std::map<int, Terms> img;
    for (const auto& [w, c] : f.terms)
        for (int code : w)
            if (code >= 0 && !is_d(code)) img[code] = Terms{{Word{code - 1}, Scalar(1)}};
    return derive(
        a, f,
        [&](int code) -> const Terms* {
            auto it = img.find(code);
            return it == img.end() ? nullptr : &it->second;
        },
        0, 1, f.order_cap);
}

NCForm contraction(const Alphabet& a, const VectorField& v, const NCForm& f) {
    return derive(
        a, f,
        [&](int code) -> const Terms* {
            if (!is_d(code)) return nullptr;
            auto it = v.images.find(letter_of(code));
            return it == v.images.end() ? nullptr : &it->second;
        },
        v.degree, 1, f.order_cap);
}

NCForm lie_derivative(const Alphabet& a, const VectorField& v, const NCForm& f) {
    const int cap = f.order_cap;
    std::map<int, Terms> dimg;
    for (const auto& [x, t] : v.images) dimg[x] = d_terms(a, t, cap);
    return derive(
        a, f,
        [&](int code) -> const Terms* {
            const auto& src = is_d(code) ? dimg : v.images;
            auto it = src.find(letter_of(code));
            return it == src.end() ? nullptr : &it->second;
        },
        v.degree, 0, cap);
}

NCForm apply_field(const Alphabet& a, const VectorField& v, const NCForm& f) { return lie_derivative(a, v, f); }

NCForm substitute(const Alphabet& a, const Automorphism& phi, const NCForm& f) {
    int cap = std::min(f.order_cap, phi.order_cap);
    std::map<int, Terms> img;  // by code
    auto image = [&](int code) -> const Terms& {
        auto it = img.find(code);
        if (it != img.end()) return it->second;
        int x = letter_of(code);
        auto jt = phi.images.find(x);
        Terms base = jt == phi.images.end() ? Terms{{Word{theta(x)}, Scalar(1)}} : jt->second;
        return img[code] = is_d(code) ? d_terms(a, base, cap) : base;
    };
    NCForm out;
    out.cyclic = f.cyclic;
    out.order_cap = cap;
    out.truncated = f.truncated;
    for (const auto& [w, c] : f.terms) {
        if (is_constant(w)) {
            add_word(a, out, w, c);
            continue;
        }
        Terms acc{{Word{}, c}};
        for (std::size_t r = 0; r < w.size(); ++r) {
            const Terms& im = image(w[r]);
            Terms next;
            const int remaining = static_cast<int>(w.size() - r - 1);
            for (const auto& [u, k] : acc)
                for (const auto& [v, m] : im) {
                    auto j = join(a, u, v);
                    if (!j) continue;
                    if (word_order(*j) + remaining > cap) {
                        out.truncated = true;
                        continue;
                    }
                    add_raw(next, *j, k * m);
                }
            acc = std::move(next);
        }
        for (const auto& [u, k] : acc) add_word(a, out, u, k);
    }
    return out;
}

VectorField euler_field(const Alphabet& a, int order_cap) {
    VectorField e;
    e.order_cap = order_cap;
    for (std::size_t x = 0; x < a.size(); ++x) e.images[static_cast<int>(x)] = Terms{{Word{theta(static_cast<int>(x))}, Scalar(1)}};
    return e;
}

VectorField bracket(const Alphabet& a, const VectorField& v, const VectorField& w) {
    VectorField out;
    out.degree = v.degree + w.degree;
    out.order_cap = std::min(v.order_cap, w.order_cap);
    Scalar sign(swap_sign(v.degree, w.degree));
    for (std::size_t x = 0; x < a.size(); ++x) {
        int xi = static_cast<int>(x);
        NCForm vw, wv;
        vw.order_cap = wv.order_cap = out.order_cap;
        if (auto it = w.images.find(xi); it != w.images.end()) vw.terms = it->second;
        if (auto it = v.images.find(xi); it != v.images.end()) wv.terms = it->second;
        NCForm r = apply_field(a, v, vw) - scaled(apply_field(a, w, wv), sign);
        if (!r.terms.empty()) out.images[xi] = r.terms;
    }
    return out;
}

VectorField category_to_vectorfield(const AInfCategory& cat, int order_cap) {
    VectorField q;
    q.degree = 1;
    q.order_cap = order_cap;
    for (const auto& [n, table] : cat.ops) {
        if (n > order_cap) continue;
        for (const auto& [t, v] : table) {
            Word w;
            for (int x : t) w.push_back(theta(x));
            for (const auto& [z, c] : v) add_raw(q.images[z], w, c);
        }
    }
    for (auto it = q.images.begin(); it != q.images.end();) it = it->second.empty() ? q.images.erase(it) : std::next(it);
    return q;
}

AInfCategory vectorfield_to_category(const AInfCategory& shape, const VectorField& q, int arity_cap) {
    AInfCategory out = shape;
    out.ops.clear();
    out.arity_cap = arity_cap;
    for (const auto& [z, t] : q.images)
        for (const auto& [w, c] : t) {
            if (is_constant(w)) throw std::invalid_argument("vector field has a constant term (curved structure)");
            Tuple tup;
            for (int code : w) {
                if (is_d(code)) throw std::invalid_argument("vector field image contains a form letter");
                tup.push_back(letter_of(code));
            }
            if (static_cast<int>(tup.size()) <= arity_cap) out.add_op(tup, z, c);
        }
    return out;
}

}  // namespace twocy
