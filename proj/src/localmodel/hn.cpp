#include <algorithm>
#include <functional>

#include "twocy/localmodel.hpp"

namespace twocy {

std::optional<Scalar> BogomolovParam::bound(const Scalar& a2, const Scalar& a1) const {
    auto it = table.find({a2, a1});
    if (it != table.end()) return it->second;
    if (use_formula) return kappa * a1 * a1 / a2 + lambda * a2 + nu;
    return std::nullopt;
}

std::vector<Scalar> a_coefficients(const RatPolynomial& p, int deg) {
    if (p.degree() > deg) throw std::invalid_argument("a_coefficients: degree " + std::to_string(p.degree()) + " exceeds " + std::to_string(deg));
    std::vector<Scalar> a;
    Scalar fact(1);
    for (int k = 0; k <= deg; ++k) {
        if (k > 0) fact *= Scalar(k);
        a.push_back(p.coeff(k) * fact);
    }
    return a;
}

RatPolynomial from_a_coefficients(const std::vector<Scalar>& a) {
    std::vector<Scalar> c;
    Scalar fact(1);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (k > 0) fact *= Scalar(static_cast<long>(k));
        c.push_back(a[k] / fact);
    }
    return RatPolynomial(c);
}

namespace {

using Coeffs = std::vector<Scalar>;  // a_0 .. a_d

struct Prepared {
    int d = 0;
    Coeffs p, q;
    std::vector<Scalar> lattice;
};

bool is_multiple(const Scalar& x, const Scalar& l) {
    Scalar r = x / l;
    return Scalar(mpq_class(r.floor())) == r;
}

Scalar round_up(const Scalar& x, const Scalar& l) { return Scalar(mpq_class((x / l).ceil())) * l; }

Prepared prepare(const HNQuery& query) {
    Prepared pr;
    pr.d = query.p.degree();
    if (pr.d < 0) throw std::invalid_argument("p: zero polynomial");
    for (const auto& c : query.p.coeffs())
        if (!c.is_rational()) throw std::invalid_argument("p: rational coefficients required");
    pr.p = a_coefficients(query.p, pr.d);
    if (pr.p.back() <= Scalar(0)) throw std::invalid_argument("p: leading coefficient must be positive");
    if (query.q_bound.degree() != pr.d) throw std::invalid_argument("q_bound: degree must equal that of p");
    pr.q = a_coefficients(query.q_bound, pr.d);
    if (pr.q.back() != Scalar(1)) throw std::invalid_argument("q_bound: leading a-coefficient must be 1");
    if (query.lattice.empty()) {
        pr.lattice.assign(static_cast<std::size_t>(pr.d + 1), Scalar(1));
    } else {
        if (query.lattice.size() != static_cast<std::size_t>(pr.d + 1)) throw std::invalid_argument("lattice: expected deg(p) + 1 entries");
        for (const auto& l : query.lattice)
            if (l <= Scalar(0)) throw std::invalid_argument("lattice: entries must be positive");
        pr.lattice = query.lattice;
    }
    return pr;
}

// Reduced coefficients a_k / a_d for k = d-1 .. k_low, compared lexicographically.
int compare_reduced(const Coeffs& x, const Coeffs& y, int d, int k_low) {
    for (int k = d - 1; k >= k_low; --k) {
        Scalar u = x[static_cast<std::size_t>(k)] / x[static_cast<std::size_t>(d)];
        Scalar v = y[static_cast<std::size_t>(k)] / y[static_cast<std::size_t>(d)];
        if (u != v) return u < v ? -1 : 1;
    }
    return 0;
}

bool type_less(const HNType& a, const HNType& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t j = 0; j < a.size(); ++j) {
        const auto& x = a[j].coeffs();
        const auto& y = b[j].coeffs();
        if (x.size() != y.size()) return x.size() < y.size();
        for (std::size_t k = x.size(); k-- > 0;)
            if (x[k] != y[k]) return x[k] < y[k];
    }
    return false;
}

}  // namespace

std::vector<HNType> hn_enumerate(const HNQuery& query) {
    const Prepared pr = prepare(query);
    const int d = pr.d;
    const auto D = static_cast<std::size_t>(d);
    std::vector<HNType> out;
    if (d == 0) {
        if (hn_type_admissible(query, {query.p})) out.push_back({query.p});
        return out;
    }

    const Scalar& ld = pr.lattice[D];
    if (!is_multiple(pr.p[D], ld)) return out;
    const long total = static_cast<long>(mpz_class((pr.p[D] / ld).floor()).get_si());

    std::vector<Coeffs> parts;

    auto lower_bound = [&](std::size_t j, int k) -> std::optional<Scalar> {
        const Coeffs& c = parts[j];
        std::optional<Scalar> lb;
        if (compare_reduced(c, pr.q, d, k + 1) == 0) lb = pr.q[static_cast<std::size_t>(k)] * c[D];
        if (d == 2 && k == 0 && query.bogomolov)
            if (auto b = query.bogomolov->bound(c[2], c[1]); b && (!lb || *b > *lb)) lb = *b;
        if (lb) lb = round_up(*lb, pr.lattice[static_cast<std::size_t>(k)]);
        return lb;
    };

    std::function<void(int)> level;
    std::function<void(int, std::size_t, Scalar)> assign = [&](int k, std::size_t j, Scalar rem) {
        const auto K = static_cast<std::size_t>(k);
        const Scalar& lk = pr.lattice[K];
        auto next_part = [&](const Scalar& v) {
            parts[j][K] = v;
            if (j > 0 && compare_reduced(parts[j - 1], parts[j], d, k) < 0) return;
            if (j + 1 == parts.size())
                level(k - 1);
            else
                assign(k, j + 1, rem - v);
        };
        if (j + 1 == parts.size()) {
            if (!is_multiple(rem, lk)) return;
            auto lb = lower_bound(j, k);
            if (lb && rem < *lb) return;
            next_part(rem);
            return;
        }
        auto lb = lower_bound(j, k);
        Scalar others(0);
        for (std::size_t l = j + 1; l < parts.size(); ++l) {
            auto o = lower_bound(l, k);
            if (!lb || !o)
                throw std::invalid_argument("hn_enumerate: a_" + std::to_string(k) + " is unbounded below for some part" +
                                            (d == 2 ? " (supply bogomolov)" : ""));
            others += *o;
        }
        for (Scalar v = *lb; v <= rem - others; v += lk) next_part(v);
    };
    level = [&](int k) {
        if (k < 0) {
            for (std::size_t j = 1; j < parts.size(); ++j)
                if (compare_reduced(parts[j - 1], parts[j], d, 0) <= 0) return;
            HNType t;
            for (const auto& c : parts) t.push_back(from_a_coefficients(c));
            out.push_back(std::move(t));
            return;
        }
        assign(k, 0, pr.p[static_cast<std::size_t>(k)]);
    };

    // Ordered compositions of the leading coefficient.
    std::vector<long> comp;
    std::function<void(long)> compose = [&](long left) {
        if (left == 0) {
            parts.assign(comp.size(), Coeffs(D + 1, Scalar(0)));
            for (std::size_t j = 0; j < comp.size(); ++j) parts[j][D] = Scalar(comp[j]) * ld;
            level(d - 1);
            return;
        }
        for (long c = 1; c <= left; ++c) {
            comp.push_back(c);
            compose(left - c);
            comp.pop_back();
        }
    };
    compose(total);

    std::sort(out.begin(), out.end(), type_less);
    return out;
}

bool hn_type_admissible(const HNQuery& query, const HNType& type, std::string* why) {
    const Prepared pr = prepare(query);
    const int d = pr.d;
    const auto D = static_cast<std::size_t>(d);
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (type.empty()) return fail("empty type");
    RatPolynomial sum;
    std::vector<Coeffs> parts;
    for (std::size_t j = 0; j < type.size(); ++j) {
        const std::string at = "part " + std::to_string(j) + ": ";
        if (type[j].degree() != d) return fail(at + "degree differs from p");
        Coeffs c = a_coefficients(type[j], d);
        if (c[D] <= Scalar(0)) return fail(at + "leading coefficient not positive");
        for (std::size_t k = 0; k <= D; ++k)
            if (!is_multiple(c[k], pr.lattice[k])) return fail(at + "a_" + std::to_string(k) + " off the lattice");
        if (compare_reduced(c, pr.q, d, 0) < 0) return fail(at + "reduced polynomial below q_bound");
        if (d == 2 && query.bogomolov)
            if (auto b = query.bogomolov->bound(c[2], c[1]); b && c[0] < *b) return fail(at + "a_0 below the Bogomolov bound");
        if (j > 0 && compare_reduced(parts.back(), c, d, 0) <= 0) return fail(at + "reduced polynomials not strictly decreasing");
        sum = sum + type[j];
        parts.push_back(std::move(c));
    }
    if (sum != query.p) return fail("parts do not sum to p");
    if (why) why->clear();
    return true;
}

}  // namespace twocy
