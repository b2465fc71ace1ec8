#include "twocy/cli.hpp"

namespace twocy::cli {

namespace {

SparseMatrix dense(std::vector<std::vector<Scalar>> rows, std::size_t cols) {
    if (rows.empty()) return SparseMatrix(0, cols);
    return SparseMatrix::from_dense(rows);
}

MatrixRep a2_point(const DimensionVector& d, SparseMatrix a, SparseMatrix astar) {
    MatrixRep r = MatrixRep::zero(double_quiver(Quiver::a2()), d);
    r.mats[0] = std::move(a);
    r.mats[1] = std::move(astar);
    return r;
}

HNQuery degree_two_query() {
    HNQuery q;
    q.p = RatPolynomial({Scalar(0), Scalar(1), Scalar(1)});  // a = (0, 1, 2)
    q.q_bound = RatPolynomial({Scalar(-2), Scalar(-1), Scalar::ratio(1, 2)});
    BogomolovParam b;
    b.use_formula = true;
    b.kappa = Scalar::ratio(1, 2);
    b.lambda = Scalar(-1);
    b.nu = Scalar(0);
    q.bogomolov = b;
    return q;
}

}  // namespace

std::vector<std::string> example_names() {
    return {"jordan-dpp", "a2-dpp", "loops2-dpp", "j2", "qe2-point", "qex-point", "qex-off-fiber", "hn-degree1", "hn-degree2"};
}

io::Json example(const std::string& name) {
    using io::envelope;
    if (name == "jordan-dpp") return envelope("dg_algebra", io::dg_algebra_json(derived_preprojective(Quiver::jordan())));
    if (name == "a2-dpp") return envelope("dg_algebra", io::dg_algebra_json(derived_preprojective(Quiver::a2())));
    if (name == "loops2-dpp") return envelope("dg_algebra", io::dg_algebra_json(derived_preprojective(Quiver::loops(2))));
    if (name == "j2") {
        MatrixRep r = MatrixRep::zero(Quiver::jordan(), {2});
        r.mats[0].set(0, 1, Scalar(1));
        return envelope("matrix_rep", io::matrix_rep_json(r));
    }
    if (name == "qe2-point") return envelope("matrix_rep", io::matrix_rep_json(a2_point({1, 1}, dense({{Scalar(3)}}, 1), dense({{Scalar(0)}}, 1))));
    if (name == "qex-point")
        return envelope("matrix_rep", io::matrix_rep_json(a2_point({1, 2}, dense({{Scalar(0)}, {Scalar(0)}}, 1), dense({{Scalar(1), Scalar(-2)}}, 2))));
    if (name == "qex-off-fiber")
        return envelope("matrix_rep", io::matrix_rep_json(a2_point({1, 2}, dense({{Scalar(1)}, {Scalar(0)}}, 1), dense({{Scalar(0), Scalar(1)}}, 2))));
    if (name == "hn-degree1") {
        HNQuery q;
        q.p = RatPolynomial({Scalar(0), Scalar(2)});
        q.q_bound = RatPolynomial({Scalar(-1), Scalar(1)});
        return envelope("hn_query", io::hn_query_json(q));
    }
    if (name == "hn-degree2") return envelope("hn_query", io::hn_query_json(degree_two_query()));
    throw std::invalid_argument("unknown example \"" + name + "\"");
}

}  // namespace twocy::cli
