#include <catch2/catch_amalgamated.hpp>

#include <isopar/curvature.hpp>
#include <isopar/fkm.hpp>

using namespace isopar;

namespace {

// tangent basis at x on M+: orthonormal complement of {x, P_0 x, ..., P_m x}
Mat plus_tangent(const FkmContext& ctx, const Vec& x) {
  Mat fixed(ctx.dim(), ctx.system.m + 2);
  fixed.col(0) = x;
  fixed.rightCols(ctx.system.m + 1) = normal_basis_m_plus(ctx, x);
  return orthonormal_complement(fixed);
}

}  // namespace

TEST_CASE("the quartic takes value -1 on M- and +1 on M+", "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(2, 2));
  Rng rng(101);
  for (int t = 0; t < 5; ++t) {
    MinusSample ms = sample_m_minus(ctx, rng);
    CHECK(std::abs(ms.y.norm() - 1.0) < 1e-12);
    CHECK((ms.P * ms.y - ms.y).norm() < 1e-12);
    CHECK(ctx.form.value(ms.y) == Catch::Approx(-1.0).margin(1e-11));

    Vec x = sample_m_plus(ctx, rng);
    CHECK(m_plus_membership_residual(ctx, x) < 1e-10);
    CHECK(ctx.form.value(x) == Catch::Approx(1.0).margin(1e-11));
  }
}

TEST_CASE("minus samples reconstruct their sphere element from the coefficients",
          "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(4, 2));
  Rng rng(103);
  MinusSample ms = sample_m_minus(ctx, rng);
  Mat p = clifford_sphere_element(ctx.system, ms.coeffs);
  CHECK(max_abs(Mat(p - ms.P)) == 0.0);
}

TEST_CASE("P_i x form an orthonormal normal basis along M+", "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(5, 1));
  Rng rng(107);
  Vec x = sample_m_plus(ctx, rng);
  Mat nb = normal_basis_m_plus(ctx, x);
  CHECK(nb.cols() == ctx.system.m + 1);
  CHECK(gram_residual(nb) < 1e-10);
  for (int i = 0; i < nb.cols(); ++i) CHECK(std::abs(nb.col(i).dot(x)) < 1e-10);
  // a generic sphere point is rejected
  CHECK_THROWS_AS(normal_basis_m_plus(ctx, Vec(rng.unit_vector(ctx.dim()))),
                  std::invalid_argument);
}

TEST_CASE("polarized shape operators equal the Clifford tangential compressions",
          "[fkm]") {
  struct Row { int m, k; std::vector<int> signs; };
  for (const Row& r : {Row{1, 3, {}}, Row{2, 2, {}}, Row{4, 2, {1, -1}}, Row{6, 1, {}}}) {
    CAPTURE(r.m, r.k);
    FkmContext ctx = make_fkm_context(build_clifford_system(r.m, r.k, r.signs));
    Rng rng(109);
    Vec x = sample_m_plus(ctx, rng);
    Mat tangent = plus_tangent(ctx, x);
    FocalFrame fr = make_frame(ctx.form, x, tangent, normal_basis_m_plus(ctx, x));
    ShapeOperatorSet via_form = second_fundamental_form(ctx.form, fr);
    ShapeOperatorSet direct = shape_operators_direct(ctx, x, tangent);
    REQUIRE(via_form.count() == direct.count());
    for (int i = 0; i < direct.count(); ++i)
      CHECK(max_abs(Mat(via_form.ops[static_cast<size_t>(i)] -
                        direct.ops[static_cast<size_t>(i)])) < 1e-10);
  }
}

TEST_CASE("Ricci curvature of M+ through P_i P_j x matches the shape operators",
          "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(4, 2));
  Rng rng(113);
  Vec x = sample_m_plus(ctx, rng);
  Mat tangent = plus_tangent(ctx, x);
  ShapeOperatorSet s = shape_operators_direct(ctx, x, tangent);
  Mat ric = ricci_operator(s);
  for (int t = 0; t < 6; ++t) {
    Vec c = rng.unit_vector(static_cast<int>(tangent.cols()));
    Vec X = tangent * c;
    CHECK(ricci_via_pipj(ctx, x, X) == Catch::Approx(c.dot(ric * c)).margin(1e-9));
  }
  CHECK_THROWS_AS(ricci_via_pipj(ctx, x, Vec(2.0 * tangent.col(0))), std::invalid_argument);
  CHECK_THROWS_AS(ricci_via_pipj(ctx, x, x), std::invalid_argument);
}

TEST_CASE("commuting product families and their joint eigenvectors", "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(7, 2));
  std::vector<ProductOp> ops = steiner_operators();
  std::vector<Mat> q;
  for (const auto& op : ops) q.push_back(product_operator(ctx.system.P, op));
  const Mat id = Mat::Identity(ctx.dim(), ctx.dim());
  for (size_t a = 0; a < q.size(); ++a) {
    CHECK(max_abs(Mat(q[a] - q[a].transpose())) < 1e-13);
    CHECK(max_abs(Mat(q[a] * q[a] - id)) < 1e-13);
    for (size_t b = a + 1; b < q.size(); ++b)
      CHECK(max_abs(Mat(q[a] * q[b] - q[b] * q[a])) < 1e-13);
  }

  Rng rng(127);
  CommonEigenvectorResult r = common_eigenvector(ctx.system.P, ops, rng);
  for (size_t a = 0; a < q.size(); ++a)
    CHECK((q[a] * r.x - r.signs[a] * r.x).norm() < 1e-9);
  // every index 0..7 appears in some product, so the joint eigenvector lies
  // on M+ automatically
  CHECK(m_plus_membership_residual(ctx, r.x) < 1e-9);
}

TEST_CASE("pair-block products carry the ten- and eleven-matrix systems", "[fkm]") {
  FkmContext nine = make_fkm_context(build_clifford_system(9, 1));
  Rng rng(131);
  CommonEigenvectorResult r9 = common_eigenvector(nine.system.P, pair_block_operators(5), rng);
  CHECK(m_plus_membership_residual(nine, r9.x) < 1e-9);
  CHECK(span_dimension(nine, r9.x) <= 21);

  FkmContext ten = make_fkm_context(build_clifford_system(10, 1));
  CommonEigenvectorResult r10 = common_eigenvector(ten.system.P, ten21_operators(), rng);
  CHECK(m_plus_membership_residual(ten, r10.x) < 1e-9);
  CHECK(span_dimension(ten, r10.x) < 52);
}

TEST_CASE("span of P_i P_j x drops at Steiner joint eigenvectors", "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(7, 2));
  Rng rng(137);
  Vec special = common_eigenvector(ctx.system.P, steiner_operators(), rng).x;
  CHECK(span_dimension(ctx, special) == 7);
  Vec generic = sample_m_plus(ctx, rng);
  CHECK(span_dimension(ctx, generic) > 7);
}

TEST_CASE("fixed sign patterns are honored or rejected", "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(7, 2));
  Rng rng(139);
  std::vector<ProductOp> ops = steiner_operators();
  CommonEigenvectorResult free = common_eigenvector(ctx.system.P, ops, rng);
  CommonEigenvectorResult fixed = common_eigenvector(ctx.system.P, ops, rng, free.signs);
  for (size_t a = 0; a < ops.size(); ++a) CHECK(fixed.signs[a] == free.signs[a]);
  CHECK_THROWS_AS(common_eigenvector(ctx.system.P, ops, rng, {1}), std::invalid_argument);
  CHECK_THROWS_AS(common_eigenvector(ctx.system.P, {}, rng), std::invalid_argument);
}

TEST_CASE("shape operator eigenspaces on M- split as kernel plus two graphs",
          "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(4, 2));
  const int m = ctx.system.m, l = ctx.system.l;
  Rng rng(149);
  MinusSample ms = sample_m_minus(ctx, rng);
  QuarticForm g = ctx.form.negated();
  FocalFrame fr = focal_frame(g, ms.y, 1e-8, -1);

  // frame normals lie in E_-(P)
  for (int j = 0; j < fr.dim_n(); ++j)
    CHECK((ms.P * fr.normal.col(j) + fr.normal.col(j)).norm() < 1e-8);

  Vec N = fr.normal.col(0);
  MinusEigenspaces es = m_minus_eigenspaces(ctx, ms.y, ms.P, N);
  CHECK(es.kernel.cols() == l - m - 1);
  CHECK(es.eplus.cols() == m);
  CHECK(es.eminus.cols() == m);

  // S_N in the combined basis must be diag(0,...,0, 1,...,1, -1,...,-1)
  Mat basis(ctx.dim(), (l - m - 1) + 2 * m);
  basis.leftCols(l - m - 1) = es.kernel;
  basis.middleCols(l - m - 1, m) = es.eplus;
  basis.rightCols(m) = es.eminus;
  CHECK(gram_residual(basis) < 1e-8);
  Mat sn = 1.5 * (basis.transpose() * g.pair_matrix(ms.y, N) * basis);
  Vec want = Vec::Zero(basis.cols());
  for (int i = 0; i < m; ++i) {
    want[l - m - 1 + i] = 1.0;
    want[l - 1 + i] = -1.0;
  }
  CHECK(max_abs(Mat(sn - Mat(want.asDiagonal()))) < 1e-8);

  // and the basis spans the tangent space of M- at y
  CHECK(max_principal_angle(basis, fr.tangent) < 1e-7);
}

TEST_CASE("minus eigenspace extraction validates its inputs", "[fkm]") {
  FkmContext ctx = make_fkm_context(build_clifford_system(2, 2));
  Rng rng(151);
  MinusSample ms = sample_m_minus(ctx, rng);
  QuarticForm g = ctx.form.negated();
  Vec N = focal_frame(g, ms.y, 1e-8, -1).normal.col(0);
  CHECK_THROWS_AS(m_minus_eigenspaces(ctx, Vec(rng.unit_vector(ctx.dim())), ms.P, N),
                  std::invalid_argument);
  CHECK_THROWS_AS(m_minus_eigenspaces(ctx, ms.y, ms.P, Vec(2.0 * N)), std::invalid_argument);
  CHECK_THROWS_AS(m_minus_eigenspaces(ctx, ms.y, ms.P, ms.y), std::invalid_argument);
}
