#include <catch2/catch_amalgamated.hpp>

#include <isopar/clifford.hpp>
#include <isopar/rng.hpp>

using namespace isopar;

TEST_CASE("delta follows the 1,2,4,4,8,8,8,8 table with period-8 doubling", "[clifford]") {
  int table[8] = {1, 2, 4, 4, 8, 8, 8, 8};
  for (int m = 1; m <= 8; ++m) CHECK(delta(m) == table[m - 1]);
  for (int m = 1; m <= 8; ++m) CHECK(delta(m + 8) == 16 * delta(m));
  CHECK(delta(9) == 16);
  CHECK(delta(10) == 32);
  CHECK_THROWS_AS(delta(0), std::invalid_argument);
  CHECK_THROWS_AS(delta(-3), std::invalid_argument);
}

TEST_CASE("builtin systems satisfy the symmetric Clifford relations", "[clifford]") {
  struct Row { int m, k; };
  for (Row r : {Row{1, 3}, Row{2, 2}, Row{4, 2}, Row{5, 1}, Row{6, 1},
                Row{7, 2}, Row{9, 1}, Row{10, 1}}) {
    CAPTURE(r.m, r.k);
    CliffordSystem sys = build_clifford_system(r.m, r.k);
    CHECK(sys.l == r.k * delta(r.m));
    CHECK(sys.dim() == 2 * sys.l);
    CHECK(static_cast<int>(sys.P.size()) == r.m + 1);
    CHECK(sys.multiplicities() == std::pair<int, int>(r.m, sys.l - r.m - 1));
    CliffordReport rep = verify_clifford(sys);
    CHECK(rep.pass);
    CHECK(rep.max_symmetry == 0.0);
    CHECK(rep.max_anticommutator <= 1e-14);
  }
}

TEST_CASE("mixed signs change the summand blocks but keep the relations", "[clifford]") {
  CliffordSystem sys = build_clifford_system(4, 2, {1, -1});
  CHECK(verify_clifford(sys).pass);
  CHECK(sys.dim() == 16);
}

TEST_CASE("degenerate and malformed inputs are rejected", "[clifford]") {
  // l - m - 1 = 0: the second focal multiplicity collapses
  CHECK_THROWS_AS(build_clifford_system(3, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_clifford_system(1, 1), std::invalid_argument);
  CHECK_THROWS_AS(build_clifford_system(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_clifford_system(4, 0), std::invalid_argument);
  CHECK_THROWS_AS(build_clifford_system(4, 2, {1}), std::invalid_argument);
  CHECK_THROWS_AS(build_clifford_system(4, 2, {1, 2}), std::invalid_argument);
  // representation space capped at 4096 per factor of two
  CHECK_THROWS_AS(build_clifford_system(16, 33), std::invalid_argument);
}

TEST_CASE("m = 1, k = 3 is the smallest admissible system and has two matrices",
          "[clifford]") {
  CliffordSystem sys = build_clifford_system(1, 3);
  CHECK(sys.P.size() == 2);
  CHECK(sys.l == 3);
  CHECK(sys.multiplicities() == std::pair<int, int>(1, 1));
  CHECK(verify_clifford(sys).pass);
}

TEST_CASE("trace invariant separates the two sign classes at m = 4, k = 2", "[clifford]") {
  CliffordSystem pp = build_clifford_system(4, 2, {1, 1});
  CliffordSystem pm = build_clifford_system(4, 2, {1, -1});
  auto qpp = q_invariant(pp);
  auto qpm = q_invariant(pm);
  REQUIRE(qpp);
  REQUIRE(qpm);
  CHECK(std::abs(std::abs(*qpp) - 2.0) < 1e-12);
  CHECK(std::abs(*qpm) < 1e-12);
  CHECK(std::abs(trace_invariant(pp)) == Catch::Approx(2.0 * 2.0 * delta(4)));

  // q only makes sense with five matrices
  CHECK_FALSE(q_invariant(build_clifford_system(2, 2)));
  CHECK_FALSE(q_invariant(build_clifford_system(5, 1)));
}

TEST_CASE("trace of the full product vanishes off the m = 4 family", "[clifford]") {
  CHECK(std::abs(trace_invariant(build_clifford_system(2, 2))) < 1e-12);
  CHECK(std::abs(trace_invariant(build_clifford_system(5, 1))) < 1e-12);
  CHECK(std::abs(trace_invariant(build_clifford_system(6, 1))) < 1e-12);
}

TEST_CASE("unit combinations of the system are symmetric involutions", "[clifford]") {
  CliffordSystem sys = build_clifford_system(2, 2);
  Rng rng(7);
  for (int t = 0; t < 10; ++t) {
    Vec c = rng.unit_vector(sys.m + 1);
    Mat p = clifford_sphere_element(sys, c);
    CHECK(max_abs(Mat(p - p.transpose())) < 1e-13);
    CHECK(max_abs(Mat(p * p - Mat::Identity(sys.dim(), sys.dim()))) < 1e-12);
    CHECK(std::abs(p.trace()) < 1e-11);
  }
  CHECK_THROWS_AS(clifford_sphere_element(sys, Vec::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(clifford_sphere_element(sys, Vec::Unit(4, 0)), std::invalid_argument);
}

TEST_CASE("sphere elements split the space into equal eigenspaces", "[clifford]") {
  CliffordSystem sys = build_clifford_system(4, 2);
  Rng rng(11);
  Mat p = clifford_sphere_element(sys, rng.unit_vector(5));
  Vec ev = sym_eigenvalues(p);
  int plus = 0, minus = 0;
  for (int i = 0; i < ev.size(); ++i) {
    if (std::abs(ev[i] - 1.0) < 1e-10) ++plus;
    else if (std::abs(ev[i] + 1.0) < 1e-10) ++minus;
  }
  CHECK(plus == sys.l);
  CHECK(minus == sys.l);
}

TEST_CASE("the nine-matrix system on R^32 relabels as an extended eight-matrix one",
          "[clifford]") {
  ExtendedSystem ext = build_extended_system();
  CHECK(ext.base.m == 8);
  CHECK(ext.base.l == 16);
  CHECK(ext.base.k == 2);
  CHECK(ext.base.dim() == 32);
  CHECK(ext.base.multiplicities() == std::pair<int, int>(8, 7));
  CHECK(verify_clifford(ext.base).pass);

  // the companion is one more symmetric anticommuting involution
  const Mat& c = ext.companion;
  CHECK(max_abs(Mat(c - c.transpose())) == 0.0);
  CHECK(max_abs(Mat(c * c - Mat::Identity(32, 32))) < 1e-13);
  for (const Mat& p : ext.base.P) CHECK(max_abs(Mat(p * c + c * p)) < 1e-13);
}

TEST_CASE("JSON serialization round-trips a system exactly", "[clifford]") {
  CliffordSystem sys = build_clifford_system(4, 2, {1, -1});
  nlohmann::json j = to_json(sys);
  CliffordSystem back = clifford_from_json(j);
  CHECK(back.m == sys.m);
  CHECK(back.l == sys.l);
  CHECK(back.k == sys.k);
  CHECK(back.signs == sys.signs);
  REQUIRE(back.P.size() == sys.P.size());
  for (size_t i = 0; i < sys.P.size(); ++i)
    CHECK(max_abs(Mat(back.P[i] - sys.P[i])) == 0.0);
  CHECK(verify_clifford(back).pass);
}

TEST_CASE("malformed JSON documents are rejected", "[clifford]") {
  CliffordSystem sys = build_clifford_system(2, 2);
  nlohmann::json j = to_json(sys);
  nlohmann::json missing = j;
  missing.erase("matrices");
  CHECK_THROWS(clifford_from_json(missing));
  nlohmann::json wrong = j;
  wrong["m"] = 5;  // count mismatch with the stored matrices
  CHECK_THROWS(clifford_from_json(wrong));
}
