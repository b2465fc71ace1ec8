#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "twocy/ainfinity.hpp"

namespace twocy {

void vec_add(Vec& v, int k, const Scalar& s) {
    if (s.is_zero()) return;
    auto it = v.find(k);
    if (it == v.end()) {
        v.emplace(k, s);
    } else {
        it->second += s;
        if (it->second.is_zero()) v.erase(it);
    }
}

void vec_axpy(Vec& y, const Scalar& a, const Vec& x) {
    if (a.is_zero()) return;
    for (const auto& [k, s] : x) vec_add(y, k, a * s);
}

Vec vec_scaled(const Vec& v, const Scalar& s) {
    Vec out;
    vec_axpy(out, s, v);
    return out;
}

Scalar CyclicPairing::value(int x, int y) const {
    auto it = g.find({x, y});
    return it == g.end() ? Scalar() : it->second;
}

int AInfCategory::object_index(const std::string& label) const {
    for (std::size_t i = 0; i < objects.size(); ++i)
        if (objects[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown object '" + label + "'");
}

int AInfCategory::basis_index(const std::string& label) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].label == label) return static_cast<int>(i);
    throw std::invalid_argument("unknown basis element '" + label + "'");
}

std::vector<int> AInfCategory::hom(int src, int tgt) const {
    std::vector<int> out;
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i].src == src && basis[i].tgt == tgt) out.push_back(static_cast<int>(i));
    return out;
}

bool AInfCategory::composable(const Tuple& t) const {
    for (std::size_t k = 0; k + 1 < t.size(); ++k)
        if (basis[static_cast<std::size_t>(t[k])].src != basis[static_cast<std::size_t>(t[k + 1])].tgt) return false;
    return true;
}

const Vec* AInfCategory::op(const Tuple& t) const {
    auto it = ops.find(static_cast<int>(t.size()));
    if (it == ops.end()) return nullptr;
    auto jt = it->second.find(t);
    return jt == it->second.end() ? nullptr : &jt->second;
}

Vec AInfCategory::apply(const std::vector<Vec>& args) const {
    Vec out;
    const std::size_t n = args.size();
    if (n == 0) return out;
    for (const auto& a : args)
        if (a.empty()) return out;
    auto table = ops.find(static_cast<int>(n));
    if (table == ops.end() || table->second.empty()) return out;
    std::vector<Vec::const_iterator> it(n);
    for (std::size_t k = 0; k < n; ++k) it[k] = args[k].begin();
    Tuple t(n);
    for (;;) {
        Scalar c = 1;
        for (std::size_t k = 0; k < n; ++k) {
            t[k] = it[k]->first;
            c *= it[k]->second;
        }
        auto f = table->second.find(t);
        if (f != table->second.end()) vec_axpy(out, c, f->second);
        bool advanced = false;
        for (std::size_t k = n; k-- > 0;) {
            if (++it[k] != args[k].end()) {
                advanced = true;
                break;
            }
            it[k] = args[k].begin();
        }
        if (!advanced) return out;
    }
}

void AInfCategory::add_op(const Tuple& t, int out, const Scalar& c) {
    if (c.is_zero()) return;
    auto& table = ops[static_cast<int>(t.size())];
    auto& v = table[t];
    vec_add(v, out, c);
    if (v.empty()) table.erase(t);
}

bool AInfCategory::is_minimal() const {
    auto it = ops.find(1);
    return it == ops.end() || it->second.empty();
}

int AInfCategory::max_nonzero_arity() const {
    int m = 0;
    for (const auto& [n, t] : ops)
        if (!t.empty()) m = std::max(m, n);
    return m;
}

void AInfCategory::validate() const {
    const int nobj = static_cast<int>(objects.size());
    std::set<std::string> labels;
    for (const auto& b : basis) {
        if (b.src < 0 || b.src >= nobj || b.tgt < 0 || b.tgt >= nobj)
            throw std::invalid_argument("basis element '" + b.label + "' has an endpoint outside the object set");
        if (!labels.insert(b.label).second) throw std::invalid_argument("duplicate basis label '" + b.label + "'");
    }
    const int nb = static_cast<int>(basis.size());
    for (const auto& [n, table] : ops) {
        if (n < 1) throw std::invalid_argument("operation arity must be positive");
        if (n > arity_cap && !table.empty())
            throw std::invalid_argument("b_" + std::to_string(n) + " is stored above the arity cap");
        for (const auto& [t, v] : table) {
            if (static_cast<int>(t.size()) != n) throw std::invalid_argument("tuple length differs from arity");
            for (int x : t)
                if (x < 0 || x >= nb) throw std::invalid_argument("basis index out of range in b_" + std::to_string(n));
            if (!composable(t)) throw std::invalid_argument("non-composable input " + tuple_str(t));
            int deg = 2 - n;
            for (int x : t) deg += basis[static_cast<std::size_t>(x)].degree;
            const auto& first = basis[static_cast<std::size_t>(t.front())];
            const auto& last = basis[static_cast<std::size_t>(t.back())];
            for (const auto& [y, c] : v) {
                if (y < 0 || y >= nb) throw std::invalid_argument("output index out of range in b_" + std::to_string(n));
                const auto& out = basis[static_cast<std::size_t>(y)];
                if (out.tgt != first.tgt || out.src != last.src)
                    throw std::invalid_argument("b_" + std::to_string(n) + " output " + out.label + " has wrong endpoints on " + tuple_str(t));
                if (out.degree != deg)
                    throw std::invalid_argument("b_" + std::to_string(n) + " has degree != +1 on " + tuple_str(t));
                if (c.is_zero()) throw std::invalid_argument("stored zero coefficient");
            }
        }
    }
    for (const auto& [o, e] : units) {
        if (o < 0 || o >= nobj || e < 0 || e >= nb) throw std::invalid_argument("unit index out of range");
        const auto& b = basis[static_cast<std::size_t>(e)];
        if (b.src != o || b.tgt != o || b.degree != 0)
            throw std::invalid_argument("unit '" + b.label + "' is not a degree-0 endomorphism of its object");
    }
    if (pairing) {
        for (const auto& [xy, c] : pairing->g) {
            auto [x, y] = xy;
            if (x < 0 || x >= nb || y < 0 || y >= nb) throw std::invalid_argument("pairing index out of range");
            const auto& bx = basis[static_cast<std::size_t>(x)];
            const auto& by = basis[static_cast<std::size_t>(y)];
            if (bx.src != by.tgt || bx.tgt != by.src)
                throw std::invalid_argument("pairing couples non-dual hom spaces: " + bx.label + ", " + by.label);
            if ((bx.degree - 1) + (by.degree - 1) != pairing->dim - 2)
                throw std::invalid_argument("pairing couples elements of non-complementary degree: " + bx.label + ", " + by.label);
        }
    }
}

std::vector<Tuple> AInfCategory::composable_tuples(int n, const std::vector<int>* allowed) const {
    std::vector<int> pool;
    if (allowed)
        pool = *allowed;
    else
        for (std::size_t i = 0; i < basis.size(); ++i) pool.push_back(static_cast<int>(i));
    std::map<int, std::vector<int>> by_tgt;
    for (int x : pool) by_tgt[basis[static_cast<std::size_t>(x)].tgt].push_back(x);
    std::vector<Tuple> cur;
    if (n <= 0) return cur;
    for (int x : pool) cur.push_back({x});
    for (int k = 1; k < n; ++k) {
        std::vector<Tuple> next;
        for (const auto& t : cur) {
            auto it = by_tgt.find(basis[static_cast<std::size_t>(t.back())].src);
            if (it == by_tgt.end()) continue;
            for (int y : it->second) {
                Tuple u = t;
                u.push_back(y);
                next.push_back(std::move(u));
            }
        }
        cur = std::move(next);
    }
    return cur;
}

std::string AInfCategory::tuple_str(const Tuple& t) const {
    std::string s = "(";
    for (std::size_t k = 0; k < t.size(); ++k) {
        if (k) s += ",";
        if (t[k] >= 0 && t[k] < static_cast<int>(basis.size()))
            s += basis[static_cast<std::size_t>(t[k])].label;
        else
            s += "?" + std::to_string(t[k]);
    }
    return s + ")";
}

std::string AInfCategory::vec_str(const Vec& v) const {
    if (v.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : v) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")" << basis[static_cast<std::size_t>(k)].label;
    }
    return os.str();
}

namespace {

std::map<int, OpTable> resign(const std::vector<BasisElem>& basis, const std::map<int, OpTable>& in) {
    std::map<int, OpTable> out;
    for (const auto& [n, table] : in) {
        auto& dst = out[n];
        for (const auto& [t, v] : table) {
            long e = 1;  // the leading minus sign
            for (std::size_t k = 0; k < t.size(); ++k)
                e += static_cast<long>(n - 1 - static_cast<int>(k)) * (basis[static_cast<std::size_t>(t[k])].degree - 1);
            dst[t] = vec_scaled(v, parity_sign(e));
        }
    }
    return out;
}

}  // namespace

std::map<int, OpTable> m_from_b(const std::vector<BasisElem>& basis, const std::map<int, OpTable>& b) { return resign(basis, b); }
std::map<int, OpTable> b_from_m(const std::vector<BasisElem>& basis, const std::map<int, OpTable>& m) { return resign(basis, m); }

std::vector<DegreeSupport> degree_support_bound(const AInfCategory& cat, int max_arity, bool strict_units) {
    struct Cls {
        int src, tgt, deg;
        auto operator<=>(const Cls&) const = default;
    };
    std::set<Cls> classes;
    for (const auto& b : cat.basis) classes.insert({b.src, b.tgt, b.degree});
    bool zero_is_unit = true;
    for (std::size_t i = 0; i < cat.basis.size(); ++i) {
        if (cat.basis[i].degree != 0) continue;
        bool is_unit = false;
        for (const auto& [o, e] : cat.units)
            if (e == static_cast<int>(i)) is_unit = true;
        if (!is_unit) zero_is_unit = false;
    }
    std::vector<DegreeSupport> out;
    for (int n = 1; n <= max_arity; ++n) {
        bool drop_zero = strict_units && zero_is_unit && n >= 3;
        std::vector<Cls> pool;
        for (const auto& c : classes)
            if (!(drop_zero && c.deg == 0)) pool.push_back(c);
        std::set<std::pair<std::vector<int>, int>> found;
        // depth-first over composable class sequences
        std::vector<Cls> stack;
        std::function<void()> rec = [&]() {
            if (static_cast<int>(stack.size()) == n) {
                int deg = 2 - n;
                std::vector<int> ds;
                for (const auto& c : stack) {
                    deg += c.deg;
                    ds.push_back(c.deg);
                }
                if (classes.count({stack.back().src, stack.front().tgt, deg})) found.insert({ds, deg});
                return;
            }
            for (const auto& c : pool) {
                if (!stack.empty() && stack.back().src != c.tgt) continue;
                stack.push_back(c);
                rec();
                stack.pop_back();
            }
        };
        rec();
        out.push_back({n, {found.begin(), found.end()}});
    }
    return out;
}

}  // namespace twocy
