// Built-in example table (the FKM systems and the two so(5) orbit families)
// with their expected Einstein / Willmore verdicts stored as data, plus the
// sampling and evaluation drivers shared by the command line tool and the
// test suite. Focal-side evaluation is deterministic: every point draws from
// an Rng stream derived from (seed, case id, side, point index), so thread
// scheduling cannot change a report.
#pragma once

#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "isopar/clifford.hpp"
#include "isopar/curvature.hpp"
#include "isopar/fkm.hpp"
#include "isopar/homogeneous.hpp"
#include "isopar/parallel.hpp"
#include "isopar/quartic.hpp"
#include "isopar/rng.hpp"

namespace isopar {

enum class CaseFamily { fkm, fkm_extended, so5_real, so5_complex };

struct CaseSpec {
  std::string id;     // stable selector, e.g. "fkm-4-2-pp"
  std::string row;    // verdict table row label, e.g. "(4,3) |q|=2"
  CaseFamily family = CaseFamily::fkm;
  int m = 0, k = 0;              // FKM families only
  std::vector<int> signs;        // FKM families only
  std::pair<int, int> multiplicities{0, 0};  // (m1, m2) of the defining form
  // Expected verdicts. Willmore is expected to hold on both focal sets of
  // every case; Einstein holds only where marked.
  bool einstein_plus = false;
  bool einstein_minus = false;
};

inline const std::vector<CaseSpec>& builtin_cases() {
  static const std::vector<CaseSpec> table = [] {
    std::vector<CaseSpec> c;
    auto fkm_case = [&c](const std::string& id, int m, int k, std::vector<int> signs,
                         bool eplus) {
      CaseSpec s;
      s.id = id;
      s.family = CaseFamily::fkm;
      s.m = m;
      s.k = k;
      s.signs = std::move(signs);
      const int l = k * delta(m);
      s.multiplicities = {m, l - m - 1};
      s.row = "(" + std::to_string(m) + "," + std::to_string(l - m - 1) + ")";
      s.einstein_plus = eplus;
      c.push_back(std::move(s));
    };
    fkm_case("fkm-1-3", 1, 3, {}, false);
    fkm_case("fkm-2-2", 2, 2, {}, false);
    fkm_case("fkm-4-2-pp", 4, 2, {1, 1}, true);
    c.back().row = "(4,3) |q|=2";
    fkm_case("fkm-4-2-pm", 4, 2, {1, -1}, false);
    c.back().row = "(4,3) q=0";
    fkm_case("fkm-5-1", 5, 1, {}, false);
    fkm_case("fkm-6-1", 6, 1, {}, false);
    fkm_case("fkm-7-2", 7, 2, {}, false);
    {
      CaseSpec s;
      s.id = "fkm-8-ext";
      s.family = CaseFamily::fkm_extended;
      s.m = 8;
      s.k = 2;
      s.signs = {1, 1};
      s.multiplicities = {8, 7};
      s.row = "(8,7)";
      c.push_back(std::move(s));
    }
    fkm_case("fkm-9-1", 9, 1, {}, false);
    fkm_case("fkm-10-1", 10, 1, {}, false);
    {
      CaseSpec s;
      s.id = "so5-real";
      s.family = CaseFamily::so5_real;
      s.multiplicities = {2, 2};
      s.row = "(2,2)";
      s.einstein_minus = true;  // the focal set congruent to the oriented
                                // 2-plane Grassmannian is Einstein
      c.push_back(std::move(s));
    }
    {
      CaseSpec s;
      s.id = "so5-complex";
      s.family = CaseFamily::so5_complex;
      s.multiplicities = {4, 5};
      s.row = "(4,5)";
      c.push_back(std::move(s));
    }
    return c;
  }();
  return table;
}

inline const CaseSpec* find_case(const std::string& id) {
  for (const CaseSpec& s : builtin_cases())
    if (s.id == id) return &s;
  return nullptr;
}

// Expected verdicts for an arbitrary (possibly non-builtin) FKM case: among
// FKM focal sets only the M+ with multiplicities (4,3) and |q| = 2 is
// Einstein, and no FKM M- is.
inline std::pair<bool, bool> expected_einstein_fkm(const CliffordSystem& sys) {
  bool plus = false;
  if (auto q = q_invariant(sys); q && sys.m2() == 3)
    plus = std::abs(std::abs(*q) - 2.0) < 1e-9;
  return {plus, false};
}

struct CaseRuntime {
  CaseSpec spec;
  std::shared_ptr<FkmContext> fkm;  // null for the so(5) families
  std::shared_ptr<Mat> companion;   // extended family only
  QuarticForm form;                 // defining polynomial, M+ convention
};

inline So5Kind so5_kind(const CaseSpec& spec) {
  if (spec.family == CaseFamily::so5_real) return So5Kind::real5;
  if (spec.family == CaseFamily::so5_complex) return So5Kind::complex5;
  throw std::invalid_argument("so5_kind: not an orbit family case");
}

inline CaseRuntime make_case_runtime(const CaseSpec& spec) {
  if (spec.family == CaseFamily::so5_real)
    return CaseRuntime{spec, nullptr, nullptr, so5_real_polynomial()};
  if (spec.family == CaseFamily::so5_complex)
    return CaseRuntime{spec, nullptr, nullptr, so5_complex_polynomial()};
  if (spec.family == CaseFamily::fkm_extended) {
    ExtendedSystem ext = build_extended_system();
    auto ctx = std::make_shared<FkmContext>(make_fkm_context(std::move(ext.base)));
    auto comp = std::make_shared<Mat>(std::move(ext.companion));
    QuarticForm f = ctx->form;
    return CaseRuntime{spec, std::move(ctx), std::move(comp), std::move(f)};
  }
  auto ctx = std::make_shared<FkmContext>(
      make_fkm_context(build_clifford_system(spec.m, spec.k, spec.signs)));
  QuarticForm f = ctx->form;
  return CaseRuntime{spec, std::move(ctx), nullptr, std::move(f)};
}

// Commuting product families whose joint eigenvectors witness the Einstein
// failure on M+ of the larger systems; empty when generic sampling suffices.
inline std::vector<ProductOp> special_point_operators(const CaseSpec& spec) {
  if (spec.family == CaseFamily::fkm_extended) return pair_block_operators(5);
  if (spec.family != CaseFamily::fkm) return {};
  if (spec.m == 9 && spec.k == 1) return pair_block_operators(5);
  if (spec.m == 10 && spec.k == 1) return ten21_operators();
  if (spec.m == 7 && spec.k == 2) return steiner_operators();
  return {};
}

// Expectations at the joint-eigenvector points of M+: upper bound for
// dim span{P_i P_j x} and whether the shape operator kernels coincide there.
struct SpecialExpectations {
  std::optional<int> span_bound;
  bool condition_a = false;
};

inline SpecialExpectations special_expectations(const CaseSpec& spec) {
  SpecialExpectations e;
  if (spec.family == CaseFamily::fkm_extended) {
    e.span_bound = 21;  // strictly below dim M+ = 22
  } else if (spec.family == CaseFamily::fkm && spec.m == 9 && spec.k == 1) {
    e.span_bound = 21;
  } else if (spec.family == CaseFamily::fkm && spec.m == 10 && spec.k == 1) {
    e.span_bound = 51;  // strictly below dim M+ = 52
  } else if (spec.family == CaseFamily::fkm && spec.m == 7 && spec.k == 2) {
    e.span_bound = 7;
    e.condition_a = true;
  }
  return e;
}

// The matrices the product family indexes into: the system itself, plus the
// companion for the extended case.
inline std::vector<Mat> product_matrix_list(const CaseRuntime& rt) {
  if (!rt.fkm) throw std::invalid_argument("product_matrix_list: not an FKM case");
  std::vector<Mat> mats = rt.fkm->system.P;
  if (rt.companion) mats.push_back(*rt.companion);
  return mats;
}

// Generic point on the requested focal variety of the defining polynomial
// (plus: F = +1, minus: F = -1).
inline Vec sample_focal_point(const CaseRuntime& rt, FocalSide side, Rng& rng) {
  if (rt.fkm) {
    if (side == FocalSide::plus) return sample_m_plus(*rt.fkm, rng);
    return sample_m_minus(*rt.fkm, rng).y;
  }
  So5Kind kind = so5_kind(rt.spec);
  return adjoint_orbit_sample(kind, reference_point(kind, side), rng);
}

// Joint eigenvector of the case's commuting product family; always a point
// of M+ because every matrix index appears in some product.
inline Vec sample_special_plus_point(const CaseRuntime& rt, Rng& rng) {
  std::vector<ProductOp> ops = special_point_operators(rt.spec);
  if (ops.empty())
    throw std::invalid_argument("sample_special_plus_point: case has no product family");
  CommonEigenvectorResult r = common_eigenvector(product_matrix_list(rt), ops, rng);
  if (m_plus_membership_residual(*rt.fkm, r.x) > 1e-8)
    throw std::runtime_error("sample_special_plus_point: joint eigenvector left M+");
  return r.x;
}

struct EvalOptions {
  int samples = 20;
  std::uint64_t seed = 42;
  double willmore_tol = 1e-7;
  double einstein_yes_tol = 1e-6;
  double einstein_no_tol = 0.5;
  double spectrum_tol = 1e-7;
  int random_combos = 2;    // extra random unit normal directions per point
  bool with_blocks = false; // eigenspace block decomposition per point
};

struct PointReport {
  int index = 0;
  bool special = false;            // joint-eigenvector sample
  double membership_residual = 0;  // |F(x) - 1| for the signed form
  double willmore_max = 0;
  double einstein_defect = 0;
  double einstein_spread = 0;
  double lambda_bar = 0;
  double spectrum_dev = 0;
  int span_dim = -1;               // dim span{P_i P_j x}, FKM M+ only
  bool condition_a = false;        // coinciding kernels, FKM M+ only
  int kernel_intersection_dim = -1;
  double blocks_max_diagonal = -1; // with_blocks only
  double blocks_bc_gap = -1;       // with_blocks only
};

struct SideReport {
  std::string side;  // "+" or "-"
  int dim_tangent = 0;
  int normal_count = 0;
  int zeros = 0, ones = 0;  // expected spectrum multiplicities per normal
  std::vector<PointReport> points;
  double willmore_max = 0;
  double einstein_defect_max = 0;
  double einstein_defect_min = 0;
  double spectrum_dev_max = 0;
  double lambda_bar_first = 0;
  double blocks_max_diagonal = -1;
  double blocks_bc_gap = -1;
  bool willmore_yes = false;
  std::string einstein_verdict;  // "yes" | "no" | "inconclusive"
};

namespace detail {

inline std::uint64_t stream_tag(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace detail

// Samples one focal set and computes every per-point verdict quantity. For
// FKM M+ with a commuting product family, odd point indices use joint
// eigenvectors so the Einstein witnesses are always among the samples.
inline SideReport evaluate_focal_side(const CaseRuntime& rt, FocalSide side,
                                      const EvalOptions& opts) {
  if (opts.samples < 1) throw std::invalid_argument("evaluate_focal_side: samples < 1");
  const QuarticForm form = side == FocalSide::plus ? rt.form : rt.form.negated();
  const auto [m1, m2] = form.multiplicities();
  const bool has_special =
      side == FocalSide::plus && !special_point_operators(rt.spec).empty();
  const std::uint64_t tag = detail::stream_tag(
      rt.spec.id + (side == FocalSide::plus ? "/+" : "/-"));

  SideReport rep;
  rep.side = side == FocalSide::plus ? "+" : "-";
  rep.zeros = m1;
  rep.ones = m2;
  rep.points.resize(static_cast<size_t>(opts.samples));
  std::vector<std::string> errors(static_cast<size_t>(opts.samples));

  parallel_for(opts.samples, [&](int i) {
    try {
      Rng rng = Rng::derive(opts.seed, tag, static_cast<std::uint64_t>(i));
      PointReport& pt = rep.points[static_cast<size_t>(i)];
      pt.index = i;
      pt.special = has_special && (i % 2 == 1);
      Vec x = pt.special ? sample_special_plus_point(rt, rng)
                         : sample_focal_point(rt, side, rng);
      pt.membership_residual = std::abs(form.value(x) - 1.0);
      FocalFrame frame =
          focal_frame(form, x, 1e-8, side == FocalSide::plus ? +1 : -1);
      ShapeOperatorSet s = second_fundamental_form(form, frame);

      pt.willmore_max = max_willmore_residual(s);
      EinsteinReport er = einstein_defect(s);
      pt.einstein_defect = er.defect;
      pt.einstein_spread = er.spread;
      pt.lambda_bar = er.lambda_bar;

      double dev = 0;
      for (int a = 0; a < s.count(); ++a) {
        Vec e = Vec::Zero(s.count());
        e[a] = 1.0;
        dev = std::max(dev, spectrum_deviation(principal_curvature_spectrum(s, e),
                                               m1, m2, m2));
      }
      for (int c = 0; c < opts.random_combos; ++c) {
        Vec e = rng.unit_vector(s.count());
        dev = std::max(dev, spectrum_deviation(principal_curvature_spectrum(s, e),
                                               m1, m2, m2));
      }
      pt.spectrum_dev = dev;

      if (rt.fkm && side == FocalSide::plus) {
        pt.span_dim = span_dimension(*rt.fkm, x);
        ConditionAReport ca = condition_A_check(s);
        pt.condition_a = ca.holds;
        pt.kernel_intersection_dim = ca.intersection_dim;
      }
      if (opts.with_blocks) {
        double diag = 0, gap = 0;
        for (int base = 0; base < s.count(); ++base) {
          BlockDecomposition d = isoparametric_blocks(s, base);
          diag = std::max(diag, d.max_diagonal_block);
          gap = std::max(gap, d.max_bc_norm_gap);
        }
        pt.blocks_max_diagonal = diag;
        pt.blocks_bc_gap = gap;
      }
    } catch (const std::exception& e) {
      errors[static_cast<size_t>(i)] = e.what();
    }
  });

  for (int i = 0; i < opts.samples; ++i)
    if (!errors[static_cast<size_t>(i)].empty())
      throw std::runtime_error("point " + std::to_string(i) + ": " +
                               errors[static_cast<size_t>(i)]);

  rep.dim_tangent = m1 + 2 * m2;
  rep.normal_count = m1 + 1;
  rep.einstein_defect_min = rep.points.front().einstein_defect;
  rep.lambda_bar_first = rep.points.front().lambda_bar;
  for (const PointReport& pt : rep.points) {
    rep.willmore_max = std::max(rep.willmore_max, pt.willmore_max);
    rep.einstein_defect_max = std::max(rep.einstein_defect_max, pt.einstein_defect);
    rep.einstein_defect_min = std::min(rep.einstein_defect_min, pt.einstein_defect);
    rep.spectrum_dev_max = std::max(rep.spectrum_dev_max, pt.spectrum_dev);
    if (opts.with_blocks) {
      rep.blocks_max_diagonal = std::max(rep.blocks_max_diagonal, pt.blocks_max_diagonal);
      rep.blocks_bc_gap = std::max(rep.blocks_bc_gap, pt.blocks_bc_gap);
    }
  }
  rep.willmore_yes = rep.willmore_max <= opts.willmore_tol;
  if (rep.einstein_defect_max <= opts.einstein_yes_tol) rep.einstein_verdict = "yes";
  else if (rep.einstein_defect_max >= opts.einstein_no_tol) rep.einstein_verdict = "no";
  else rep.einstein_verdict = "inconclusive";
  return rep;
}

struct CaseVerdict {
  CaseSpec spec;
  std::optional<double> q;  // measured trace invariant quotient, m = 4 only
  SideReport plus;
  SideReport minus;
  bool willmore_match = false;
  bool einstein_match = false;
  bool match = false;
};

inline CaseVerdict evaluate_case(const CaseRuntime& rt, const EvalOptions& opts) {
  CaseVerdict v{rt.spec,
                std::nullopt,
                evaluate_focal_side(rt, FocalSide::plus, opts),
                evaluate_focal_side(rt, FocalSide::minus, opts),
                false,
                false,
                false};
  if (rt.fkm) v.q = q_invariant(rt.fkm->system);
  v.willmore_match = v.plus.willmore_yes && v.minus.willmore_yes;
  auto expect = [](bool e) { return e ? "yes" : "no"; };
  v.einstein_match = v.plus.einstein_verdict == expect(rt.spec.einstein_plus) &&
                     v.minus.einstein_verdict == expect(rt.spec.einstein_minus);
  v.match = v.willmore_match && v.einstein_match;
  return v;
}

struct VerdictTable {
  std::vector<CaseVerdict> rows;
  bool all_match = false;
};

inline VerdictTable verdict_table(const EvalOptions& opts) {
  VerdictTable t;
  t.all_match = true;
  for (const CaseSpec& spec : builtin_cases()) {
    CaseRuntime rt = make_case_runtime(spec);
    t.rows.push_back(evaluate_case(rt, opts));
    t.all_match = t.all_match && t.rows.back().match;
  }
  return t;
}

}  // namespace isopar
