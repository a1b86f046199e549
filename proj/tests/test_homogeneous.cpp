#include <catch2/catch_amalgamated.hpp>

#include <isopar/curvature.hpp>
#include <isopar/homogeneous.hpp>

using namespace isopar;

namespace {

// direct evaluation from the matrix picture, bypassing the cached tensor:
// F(Z) = (3/4) (Re tr Z conj(Z))^2 - 2 Re tr (Z conj(Z))^2
double direct_value(const C55& z) {
  C55 p = z * z.conjugate();
  double b = p.trace().real();
  double q = (p * p).trace().real();
  return 0.75 * b * b - 2.0 * q;
}

C55 to_skew(So5Kind kind, const Vec& v) {
  if (kind == So5Kind::real5) return flat_to_skew_real(v).cast<std::complex<double>>();
  return flat_to_skew_complex(v);
}

Mat squared_sum_at_reference(So5Kind kind, FocalSide side) {
  QuarticForm f = so5_polynomial(kind);
  if (side == FocalSide::minus) f = f.negated();
  FocalFrame raw = reference_frame(kind, side);
  FocalFrame fr = make_frame(f, raw.x, raw.tangent, raw.normal, 1e-10, raw.sign);
  return squared_shape_sum(second_fundamental_form(f, fr));
}

}  // namespace

TEST_CASE("flat coordinates and skew matrices are inverse to each other", "[so5]") {
  Rng rng(201);
  Vec vr = rng.gaussian_vector(10);
  Eigen::Matrix<double, 5, 5> zr = flat_to_skew_real(vr);
  CHECK(max_abs(Mat(zr + zr.transpose())) == 0.0);
  CHECK((skew_to_flat_real(zr) - vr).norm() == 0.0);

  Vec vc = rng.gaussian_vector(20);
  C55 zc = flat_to_skew_complex(vc);
  CHECK((zc + zc.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((skew_to_flat_complex(zc) - vc).norm() == 0.0);

  // basis convention: the first flat coordinate is the (1,2) entry
  CHECK(flat_to_skew_real(Vec::Unit(10, 0))(0, 1) == 1.0);
  CHECK(flat_to_skew_complex(Vec::Unit(20, 10))(0, 1) == std::complex<double>(0, 1));
  CHECK(pair_index(1, 2) == 0);
  CHECK(pair_index(4, 5) == 9);
}

TEST_CASE("flat norm agrees with the matrix trace form", "[so5]") {
  Rng rng(203);
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    Vec v = rng.gaussian_vector(so5_dim(kind));
    C55 z = to_skew(kind, v);
    double tr = (z * z.conjugate()).trace().real();
    CHECK(v.squaredNorm() == Catch::Approx(-0.5 * tr).margin(1e-12));
  }
}

TEST_CASE("cached tensor evaluation matches the direct matrix formula", "[so5]") {
  Rng rng(207);
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    QuarticForm f = so5_polynomial(kind);
    for (int t = 0; t < 8; ++t) {
      Vec v = rng.gaussian_vector(so5_dim(kind));
      double want = direct_value(to_skew(kind, v));
      CHECK(f.value(v) == Catch::Approx(want).margin(1e-10 * (1 + std::abs(want))));
    }
  }
}

TEST_CASE("reference points take the values +1 and -1", "[so5]") {
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    QuarticForm f = so5_polynomial(kind);
    CHECK(f.value(reference_point(kind, FocalSide::plus)) == Catch::Approx(1.0).margin(1e-13));
    CHECK(f.value(reference_point(kind, FocalSide::minus)) == Catch::Approx(-1.0).margin(1e-13));
  }
}

TEST_CASE("the quartic is invariant along the isometry orbits", "[so5]") {
  Rng rng(211);
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    QuarticForm f = so5_polynomial(kind);
    Vec base = rng.gaussian_vector(so5_dim(kind));
    double want = f.value(base);
    for (int t = 0; t < 5; ++t) {
      Vec moved = adjoint_orbit_sample(kind, base, rng);
      CHECK(moved.norm() == Catch::Approx(base.norm()).margin(1e-12));
      CHECK(f.value(moved) == Catch::Approx(want).margin(1e-10 * (1 + std::abs(want))));
    }
  }
}

TEST_CASE("both orbit polynomials satisfy the Cartan-Munzner identities", "[so5]") {
  Rng rng(213);
  CHECK(verify_cartan_munzner(so5_real_polynomial(), 40, 1e-9, rng).pass);
  CHECK(verify_cartan_munzner(so5_complex_polynomial(), 15, 1e-9, rng).pass);
  CHECK(sphere_restriction_check(so5_real_polynomial(), 40, 1e-9, rng).pass);
}

TEST_CASE("multiplicities are (2,2) and (4,5)", "[so5]") {
  CHECK(so5_real_polynomial().multiplicities() == std::pair<int, int>(2, 2));
  CHECK(so5_complex_polynomial().multiplicities() == std::pair<int, int>(4, 5));
  CHECK(so5_real_polynomial().dim() == 10);
  CHECK(so5_complex_polynomial().dim() == 20);
}

TEST_CASE("reference frames agree with the eigen-split frames", "[so5]") {
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    for (FocalSide side : {FocalSide::plus, FocalSide::minus}) {
      CAPTURE(kind == So5Kind::real5, side == FocalSide::plus);
      QuarticForm f = so5_polynomial(kind);
      if (side == FocalSide::minus) f = f.negated();
      FocalFrame ref = reference_frame(kind, side);
      FocalFrame split = focal_frame(f, ref.x, 1e-10, ref.sign);
      REQUIRE(split.dim_t() == ref.dim_t());
      REQUIRE(split.dim_n() == ref.dim_n());
      CHECK(max_principal_angle(split.tangent, ref.tangent) < 1e-7);
      CHECK(max_principal_angle(split.normal, ref.normal) < 1e-7);
    }
  }
}

TEST_CASE("shape operators at the reference frames match the closed-form quadratics",
          "[so5]") {
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    for (FocalSide side : {FocalSide::plus, FocalSide::minus}) {
      CAPTURE(kind == So5Kind::real5, side == FocalSide::plus);
      PFormReport rep = verify_paper_p_forms(kind, side);
      CHECK(rep.pass);
      CHECK(rep.match_residual < 1e-9);
      CHECK(rep.orthogonality_residual < 1e-9);
    }
  }
}

TEST_CASE("squared shape sum of the real family: round on one side only", "[so5]") {
  Mat minus = squared_sum_at_reference(So5Kind::real5, FocalSide::minus);
  CHECK(max_abs(Mat(minus - 2.0 * Mat::Identity(6, 6))) < 1e-10);

  Mat plus = squared_sum_at_reference(So5Kind::real5, FocalSide::plus);
  Mat want = Mat::Zero(6, 6);
  want.diagonal() << 3, 3, 3, 3, 0, 0;
  CHECK(max_abs(Mat(plus - want)) < 1e-10);
}

TEST_CASE("squared shape sum of the complex family on the larger focal set", "[so5]") {
  Mat e = squared_sum_at_reference(So5Kind::complex5, FocalSide::plus);
  Mat want = Mat::Zero(14, 14);
  want.diagonal() << 5, 5, 5, 5, 3, 5, 5, 5, 5, 3, 1, 1, 1, 1;
  want(4, 9) = 2.0;  // the X5 and Y5 directions couple
  want(9, 4) = 2.0;
  CHECK(max_abs(Mat(e - want)) < 1e-10);

  Vec ev = sym_eigenvalues(e);
  int fives = 0, ones = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i] - 5.0) < 1e-9) ++fives;
    if (std::abs(ev[i] - 1.0) < 1e-9) ++ones;
  }
  CHECK(fives == 9);
  CHECK(ones == 5);

  // restricted to the first block the eigenvalues are 3,5,5,5,5: a spread of
  // 2, which is what rules the Einstein property out on this focal set
  Vec block = sym_eigenvalues(Mat(e.topLeftCorner(5, 5)));
  CHECK(block.maxCoeff() == Catch::Approx(5.0).margin(1e-10));
  CHECK(block.minCoeff() == Catch::Approx(3.0).margin(1e-10));
}

TEST_CASE("the complex family's smaller focal set has a flat Ricci direction",
          "[so5]") {
  Mat e = squared_sum_at_reference(So5Kind::complex5, FocalSide::minus);
  // first tangent coordinate: every shape operator kills it
  CHECK(e.col(0).norm() < 1e-10);
  CHECK(e.diagonal().maxCoeff() > 0.5);
}

TEST_CASE("both families are Willmore at reference and orbit points", "[so5]") {
  Rng rng(223);
  for (So5Kind kind : {So5Kind::real5, So5Kind::complex5}) {
    for (FocalSide side : {FocalSide::plus, FocalSide::minus}) {
      QuarticForm f = so5_polynomial(kind);
      if (side == FocalSide::minus) f = f.negated();
      Vec x = adjoint_orbit_sample(kind, reference_point(kind, side), rng);
      FocalFrame fr = focal_frame(f, x, 1e-8, side == FocalSide::plus ? 1 : -1);
      ShapeOperatorSet s = second_fundamental_form(f, fr);
      CHECK(max_willmore_residual(s) < 1e-9);
    }
  }
}

TEST_CASE("einstein verdicts of the orbit families at sampled points", "[so5]") {
  Rng rng(227);
  // real, smaller side: Einstein with lambda over bar 2
  {
    QuarticForm g = so5_real_polynomial().negated();
    Vec y = adjoint_orbit_sample(So5Kind::real5, reference_point(So5Kind::real5, FocalSide::minus), rng);
    EinsteinReport er = einstein_defect(second_fundamental_form(g, focal_frame(g, y, 1e-8, -1)));
    CHECK(er.defect < 1e-10);
    CHECK(er.lambda_bar == Catch::Approx(2.0).margin(1e-10));
  }
  // real, larger side: defect 3/2 at every point
  {
    QuarticForm f = so5_real_polynomial();
    Vec x = adjoint_orbit_sample(So5Kind::real5, reference_point(So5Kind::real5, FocalSide::plus), rng);
    EinsteinReport er = einstein_defect(second_fundamental_form(f, focal_frame(f, x)));
    CHECK(er.defect > 0.5);
  }
  // complex: fails on both sides
  {
    QuarticForm f = so5_complex_polynomial();
    Vec x = adjoint_orbit_sample(So5Kind::complex5, reference_point(So5Kind::complex5, FocalSide::plus), rng);
    CHECK(einstein_defect(second_fundamental_form(f, focal_frame(f, x))).defect > 0.5);
    QuarticForm g = f.negated();
    Vec y = adjoint_orbit_sample(So5Kind::complex5, reference_point(So5Kind::complex5, FocalSide::minus), rng);
    CHECK(einstein_defect(second_fundamental_form(g, focal_frame(g, y, 1e-8, -1))).defect > 0.5);
  }
}
