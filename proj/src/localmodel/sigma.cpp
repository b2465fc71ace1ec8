#include "twocy/localmodel.hpp"

namespace twocy {

int SigmaCertificate::dim(int src, int tgt, int degree) const {
    auto it = ext_dims.find({src, tgt, degree});
    return it == ext_dims.end() ? 0 : it->second;
}

SigmaCertificate verify_sigma(const AInfCategory& cat) {
    SigmaCertificate cert;
    cert.objects = cat.objects;
    auto prof = sigma_profile(cat);
    cert.ext_dims = prof.ext_dims;
    cert.genus = prof.genus;
    cert.pass = prof.pass;
    cert.failures = prof.failures;
    return cert;
}

Quiver ext_quiver_halve(const SigmaCertificate& cert) {
    const int n = static_cast<int>(cert.objects.size());
    for (int i = 0; i < n; ++i) {
        if (cert.dim(i, i, 1) % 2) throw std::invalid_argument("not 2CY-consistent: odd Ext^1 at " + cert.objects[static_cast<std::size_t>(i)]);
        for (int j = i + 1; j < n; ++j)
            if (cert.dim(i, j, 1) != cert.dim(j, i, 1))
                throw std::invalid_argument("not 2CY-consistent: asymmetric Ext^1 between " + cert.objects[static_cast<std::size_t>(i)] + " and " +
                                            cert.objects[static_cast<std::size_t>(j)]);
    }
    if (!cert.pass) throw std::invalid_argument("not 2CY-consistent: " + (cert.failures.empty() ? std::string("no certificate") : cert.failures.front()));
    Quiver q;
    q.vertices = cert.objects;
    int next = 1;
    auto add = [&](int s, int t) { q.arrows.push_back({"a" + std::to_string(next++), s, t}); };
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < cert.dim(i, i, 1) / 2; ++k) add(i, i);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int m = cert.dim(i, j, 1);
            for (int k = 0; k < (m + 1) / 2; ++k) add(i, j);
            for (int k = 0; k < m / 2; ++k) add(j, i);
        }
    return q;
}

EulerComparison euler_compare(const Quiver& q, const DimensionVector& d, const SigmaCertificate& cert) {
    if (q.vertices.size() != cert.objects.size() || d.size() != cert.objects.size())
        throw std::invalid_argument("euler_compare: quiver, dimension vector and certificate disagree on the number of objects");
    // double(q) must carry the Ext^1 table.
    const std::size_t n = q.vertices.size();
    std::vector<std::vector<int>> arrows(n, std::vector<int>(n, 0));
    for (const auto& a : q.arrows) {
        ++arrows[static_cast<std::size_t>(a.src)][static_cast<std::size_t>(a.tgt)];
        ++arrows[static_cast<std::size_t>(a.tgt)][static_cast<std::size_t>(a.src)];
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            int want = cert.dim(static_cast<int>(i), static_cast<int>(j), 1);
            if (arrows[i][j] != want)
                throw std::invalid_argument("euler_compare: double of the quiver does not match Ext^1(" + cert.objects[i] + ", " + cert.objects[j] + ")");
        }
    EulerComparison out;
    out.lhs = Scalar(2) * euler_form(q, d, d);
    for (const auto& [key, dim] : cert.ext_dims) {
        auto [s, t, deg] = key;
        long w = d[static_cast<std::size_t>(s)] * d[static_cast<std::size_t>(t)] * dim;
        out.rhs += Scalar(deg % 2 ? -w : w);
    }
    out.pass = out.lhs == out.rhs;
    return out;
}

}  // namespace twocy
