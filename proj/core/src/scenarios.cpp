// Copyright 2026 The ctxval authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ctxval/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctxval {

CMatrix sigma_x() { return CMatrix::from_rows({{0.0, 1.0}, {1.0, 0.0}}); }

CMatrix sigma_y() {
  return CMatrix::from_rows({{0.0, cplx(0.0, -1.0)}, {cplx(0.0, 1.0), 0.0}});
}

CMatrix sigma_z() { return CMatrix::from_rows({{1.0, 0.0}, {0.0, -1.0}}); }

namespace {

CVector tensor2(const CVector& a, const CVector& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return out;
}

Context product_context(const std::vector<std::pair<CVector, CVector>>& pairs) {
  std::vector<CVector> vs;
  vs.reserve(pairs.size());
  for (const auto& [a, b] : pairs) vs.push_back(tensor2(a, b));
  return Context(Frame(std::move(vs)));
}

void peres_assert(bool cond, const std::string& what) {
  if (!cond) throw AssertionFailureError("run_peres: violated " + what);
}

std::vector<int> snap_to_int(const std::vector<double>& vs, const std::string& what) {
  std::vector<int> out;
  out.reserve(vs.size());
  for (double v : vs) {
    const double r = std::round(v);
    if (std::abs(v - r) > 1e-9) {
      throw AssertionFailureError(what + ": value " + std::to_string(v) +
                                  " is not integral");
    }
    out.push_back(static_cast<int>(r));
  }
  return out;
}

std::vector<int> int_values(const LabeledEnsemble& le, const CMatrix& o,
                            const std::string& what) {
  return snap_to_int(assign_value(le, o), what);
}

}  // namespace

PeresFixture peres_contexts() {
  const double s = 1.0 / std::sqrt(2.0);
  const CVector zp{1.0, 0.0};
  const CVector zm{0.0, 1.0};
  const CVector xp{s, s};
  const CVector xm{s, -s};
  const CVector yp{s, cplx(0.0, s)};
  const CVector ym{s, cplx(0.0, -s)};

  PeresFixture fx;
  fx.alpha = product_context({{xp, xp}, {xm, xm}, {xp, xm}, {xm, xp}});
  fx.beta = product_context({{yp, yp}, {ym, ym}, {yp, ym}, {ym, yp}});
  fx.gamma = product_context({{zp, zp}, {zm, zm}, {zp, zm}, {zm, zp}});
  fx.delta = product_context({{xp, yp}, {xm, ym}, {xp, ym}, {xm, yp}});
  fx.epsilon = product_context({{yp, xp}, {ym, xm}, {yp, xm}, {ym, xp}});

  const cplx i1(0.0, 1.0);
  std::vector<CVector> xi_vs;
  xi_vs.push_back(s * tensor2(zp, zp) + (i1 * s) * tensor2(zm, zm));
  xi_vs.push_back(s * tensor2(zp, zp) - (i1 * s) * tensor2(zm, zm));
  xi_vs.push_back(s * tensor2(zp, zm) + (i1 * s) * tensor2(zm, zp));
  xi_vs.push_back(s * tensor2(zp, zm) - (i1 * s) * tensor2(zm, zp));
  fx.xi = Context(Frame(std::move(xi_vs)));

  fx.singlet = s * tensor2(zp, zm) - s * tensor2(zm, zp);

  const CMatrix id2 = CMatrix::identity(2);
  fx.observables = {
      {"σx⊗I", kron(sigma_x(), id2)},  {"I⊗σx", kron(id2, sigma_x())},
      {"σx⊗σx", kron(sigma_x(), sigma_x())},
      {"σy⊗I", kron(sigma_y(), id2)},  {"I⊗σy", kron(id2, sigma_y())},
      {"σy⊗σy", kron(sigma_y(), sigma_y())},
      {"σz⊗I", kron(sigma_z(), id2)},  {"I⊗σz", kron(id2, sigma_z())},
      {"σz⊗σz", kron(sigma_z(), sigma_z())},
      {"σx⊗σy", kron(sigma_x(), sigma_y())},
      {"σy⊗σx", kron(sigma_y(), sigma_x())},
  };
  fx.contexts = {{"α", fx.alpha}, {"β", fx.beta},    {"γ", fx.gamma},
                 {"δ", fx.delta}, {"ε", fx.epsilon}, {"ξ", fx.xi}};
  return fx;
}

std::vector<std::pair<std::string, std::vector<std::string>>>
PeresFixture::stability_table() const {
  return {
      {"σx⊗I", {"α", "δ"}},  {"I⊗σx", {"α", "ε"}},  {"σx⊗σx", {"α"}},
      {"σy⊗I", {"β", "ε"}},  {"I⊗σy", {"β", "δ"}},  {"σy⊗σy", {"β"}},
      {"σz⊗I", {"γ"}},       {"I⊗σz", {"γ"}},       {"σz⊗σz", {"γ", "ξ"}},
      {"σx⊗σy", {"δ", "ξ"}}, {"σy⊗σx", {"ε", "ξ"}},
  };
}

RemarkFixture remark_fixture() {
  RemarkFixture fx;
  const double d[3] = {1.0, 2.0, 3.0};
  fx.b_hat = CMatrix::diagonal(d);
  fx.c_hat = CMatrix::from_rows(
      {{1.5, -0.5, 0.0}, {-0.5, 1.5, 0.0}, {0.0, 0.0, 3.0}});
  const double a[3] = {2.0, 2.0, 3.0};
  fx.a_hat = CMatrix::diagonal(a);
  fx.b_context = Context(Frame::standard(3));
  const double s = 1.0 / std::sqrt(2.0);
  fx.c_context = Context(Frame({CVector{s, s, 0.0}, CVector{-s, s, 0.0},
                                CVector{0.0, 0.0, 1.0}}));
  // f(x) = 2 for x < 3, x otherwise; g(x) = 2 for x <= 2, x otherwise.
  // On the spectra {1, 2, 3} both collapse to the same table.
  fx.f = EigenvalueTable{{{1.0, 2.0}, {2.0, 2.0}, {3.0, 3.0}}};
  fx.g = EigenvalueTable{{{1.0, 2.0}, {2.0, 2.0}, {3.0, 3.0}}};
  return fx;
}

PeresReport run_peres(const ScenarioConfig& cfg) {
  const PeresFixture fx = peres_contexts();

  const CMatrix& xy = fx.observables[9].second;
  const CMatrix& yx = fx.observables[10].second;
  const CMatrix& zz = fx.observables[8].second;
  const CMatrix& xi_obs = fx.observables[0].second;  // sx (x) I
  const CMatrix& ix_obs = fx.observables[1].second;
  const CMatrix& yi_obs = fx.observables[3].second;
  const CMatrix& iy_obs = fx.observables[4].second;
  const CMatrix& zi_obs = fx.observables[6].second;
  const CMatrix& iz_obs = fx.observables[7].second;

  const CMatrix product = xy * yx;
  peres_assert(max_abs_diff(product, zz) <= 1e-12,
               "(σx⊗σy)(σy⊗σx) = σz⊗σz as matrices");

  PeresReport report;
  report.epsilon = cfg.epsilon;
  report.seed = cfg.seed;
  report.n_samples = cfg.n_samples;
  report.stability_table = fx.stability_table();

  // The reported table is rechecked against is_stable on every run.
  for (const auto& [obs_name, obs] : fx.observables) {
    std::vector<std::string> stable_in;
    for (const auto& [ctx_name, ctx] : fx.contexts) {
      if (is_stable(obs, ctx)) stable_in.push_back(ctx_name);
    }
    const auto expect =
        std::find_if(report.stability_table.begin(), report.stability_table.end(),
                     [&](const auto& row) { return row.first == obs_name; });
    peres_assert(expect != report.stability_table.end() && expect->second == stable_in,
                 "the stability list for " + obs_name);
  }

  ModelConfig mc;
  mc.state = fx.singlet;
  mc.epsilon = cfg.epsilon;
  mc.base_context = fx.xi;
  mc.seed = cfg.seed;
  mc.n_samples = cfg.n_samples;

  const LabeledEnsemble e_xi = prepare(mc);
  const LabeledEnsemble e_g = extend_history(e_xi, fx.gamma);
  const LabeledEnsemble e_d = extend_history(e_xi, fx.delta);
  const LabeledEnsemble e_da = extend_history(e_d, fx.alpha);
  const LabeledEnsemble e_db = extend_history(e_d, fx.beta);
  const LabeledEnsemble e_e = extend_history(e_xi, fx.epsilon);
  const LabeledEnsemble e_eb = extend_history(e_e, fx.beta);
  const LabeledEnsemble e_ea = extend_history(e_e, fx.alpha);

  const std::vector<int> v_prod = int_values(e_xi, product, "v_ξ(product)");
  const std::vector<int> v_xy = int_values(e_xi, xy, "v_ξ(σx⊗σy)");
  const std::vector<int> v_yx = int_values(e_xi, yx, "v_ξ(σy⊗σx)");
  const std::vector<int> v_g_zz = int_values(e_g, zz, "v_ξ→γ(σz⊗σz)");
  const std::vector<int> v_g_zi = int_values(e_g, zi_obs, "v_ξ→γ(σz⊗I)");
  const std::vector<int> v_g_iz = int_values(e_g, iz_obs, "v_ξ→γ(I⊗σz)");
  const std::vector<int> a1 = int_values(e_da, xi_obs, "v_ξ→δ→α(σx⊗I)");
  const std::vector<int> a1_partner = int_values(e_da, ix_obs, "v_ξ→δ→α(I⊗σx)");
  const std::vector<int> b1 = int_values(e_db, yi_obs, "v_ξ→δ→β(σy⊗I)");
  const std::vector<int> b1_partner = int_values(e_db, iy_obs, "v_ξ→δ→β(I⊗σy)");
  const std::vector<int> b2 = int_values(e_eb, yi_obs, "v_ξ→ε→β(σy⊗I)");
  const std::vector<int> b2_partner = int_values(e_eb, iy_obs, "v_ξ→ε→β(I⊗σy)");
  const std::vector<int> a2 = int_values(e_ea, xi_obs, "v_ξ→ε→α(σx⊗I)");
  const std::vector<int> a2_partner = int_values(e_ea, ix_obs, "v_ξ→ε→α(I⊗σx)");

  const std::size_t n = cfg.n_samples;
  report.hysteresis_flags.resize(n);
  bool acrl = true;
  for (std::size_t k = 0; k < n; ++k) {
    peres_assert(v_prod[k] == v_xy[k] * v_yx[k],
                 "the product route v(AB) = v(A)v(B) in ξ");
    peres_assert(v_prod[k] == -1, "v_ξ((σx⊗σy)(σy⊗σx)) = -1");
    peres_assert(v_g_zz[k] == -1, "v_ξ→γ(σz⊗σz) = -1");
    peres_assert(v_g_zz[k] == v_prod[k], "the non-transition of σz⊗σz across ξ→γ");

    acrl = acrl && (v_g_zi[k] == -v_g_iz[k]) && (a1[k] == -a1_partner[k]) &&
           (a2[k] == -a2_partner[k]) && (b1[k] == -b1_partner[k]) &&
           (b2[k] == -b2_partner[k]);

    const int four = a1[k] * b1[k] * b2[k] * a2[k];
    peres_assert(four == -1, "the four-factor history product = -1");
    const bool x_flip = a1[k] != a2[k];
    const bool y_flip = b1[k] != b2[k];
    peres_assert(x_flip != y_flip, "exactly one pair flips per sample");
    if (x_flip) {
      ++report.flips_x;
      report.hysteresis_flags[k] = 'x';
    } else {
      ++report.flips_y;
      report.hysteresis_flags[k] = 'y';
    }

    const int noncontextual = a1[k] * a1[k] * b1[k] * b1[k];
    peres_assert(noncontextual == 1, "the noncontextual product = +1");
  }
  peres_assert(acrl, "perfect anticorrelation in the α/β/γ-ending histories");
  report.acrl_ok = acrl;
  report.product_value = -1;
  report.noncontextual_product = 1;
  report.contradiction_verified = true;

  if (cfg.verify_dual_path) {
    const auto dual_check = [](const LabeledEnsemble& le, const CMatrix& o,
                               const std::vector<int>& direct,
                               const std::string& what) {
      const std::vector<int> pulled =
          snap_to_int(assign_value_pullback(le, o), what + " (pullback)");
      if (pulled != direct) {
        throw AssertionFailureError("run_peres: dual-path mismatch in " + what);
      }
    };
    dual_check(e_xi, product, v_prod, "ξ");
    dual_check(e_g, zz, v_g_zz, "ξ→γ");
    dual_check(e_da, xi_obs, a1, "ξ→δ→α");
    dual_check(e_db, yi_obs, b1, "ξ→δ→β");
    dual_check(e_eb, yi_obs, b2, "ξ→ε→β");
    dual_check(e_ea, xi_obs, a2, "ξ→ε→α");
    report.dual_path_checked = true;
    report.dual_path_ok = true;
  }

  report.per_history_values = {
      {"ξ", v_prod},      {"ξ→γ", v_g_zz}, {"ξ→δ→α", a1},
      {"ξ→δ→β", b1},      {"ξ→ε→β", b2},   {"ξ→ε→α", a2},
  };
  return report;
}

RemarkReport run_remark(const ScenarioConfig& cfg) {
  const RemarkFixture fx = remark_fixture();

  RemarkReport report;
  report.epsilon = cfg.epsilon;
  report.seed = cfg.seed;
  report.n_samples = cfg.n_samples;

  const CMatrix fb = apply_fn_spectral(fx.b_hat, fx.f);
  const CMatrix gc = apply_fn_spectral(fx.c_hat, fx.g);
  report.matrices_match = max_abs_diff(fb, fx.a_hat) <= 1e-12 &&
                          max_abs_diff(gc, fx.a_hat) <= 1e-12;
  if (!report.matrices_match) {
    throw AssertionFailureError("run_remark: f(B) = g(C) = A fails as matrices");
  }
  report.stable_in_both =
      is_stable(fx.a_hat, fx.b_context) && is_stable(fx.a_hat, fx.c_context);
  if (!report.stable_in_both) {
    throw AssertionFailureError("run_remark: A is not stable in both contexts");
  }

  const CVector state =
      CVector{1.0, 2.0, 3.0}.normalized();  // generic: no zero amplitudes in B

  double max_dev = 0.0;
  for (int order = 0; order < 2; ++order) {
    ModelConfig mc;
    mc.state = state;
    mc.epsilon = cfg.epsilon;
    mc.base_context = order == 0 ? fx.b_context : fx.c_context;
    mc.seed = cfg.seed;
    mc.n_samples = cfg.n_samples;
    const Context& other = order == 0 ? fx.c_context : fx.b_context;
    const CMatrix& diag_here = order == 0 ? fx.b_hat : fx.c_hat;
    const CMatrix& diag_there = order == 0 ? fx.c_hat : fx.b_hat;
    const EigenvalueTable& fn_here = order == 0 ? fx.f : fx.g;
    const EigenvalueTable& fn_there = order == 0 ? fx.g : fx.f;

    const LabeledEnsemble before = prepare(mc);
    const GFuncReport g1 = check_gfunc(before, diag_here, fn_here);
    const LabeledEnsemble after = extend_history(before, other);
    const NTrnsReport nt = check_ntrns(before, after, fx.a_hat);
    const GFuncReport g2 = check_gfunc(after, diag_there, fn_there);
    max_dev = std::max({max_dev, g1.max_fn_dev, g2.max_fn_dev, nt.max_dev});
  }
  report.route_consistent = true;
  report.max_route_dev = max_dev;
  return report;
}

LabeledEnsemble born_ensemble(const CVector& state,
                              const std::vector<Frame>& history_frames,
                              const ScenarioConfig& cfg) {
  if (history_frames.empty()) {
    throw InvalidConfigError("born: history must contain at least one context");
  }
  ModelConfig mc;
  mc.state = state.normalized();
  mc.epsilon = cfg.epsilon;
  mc.base_context = Context(history_frames.front());
  mc.seed = cfg.seed;
  mc.n_samples = cfg.n_samples;

  LabeledEnsemble le = prepare(mc);
  for (std::size_t i = 1; i < history_frames.size(); ++i) {
    le = extend_history(le, Context(history_frames[i]));
  }
  return le;
}

BornReport run_born(const LabeledEnsemble& le, const CMatrix& observable) {
  BornReport report;
  report.epsilon = le.config().epsilon;
  report.seed = le.config().seed;
  report.n_samples = le.config().n_samples;
  for (const Context& c : le.history().contexts()) report.history_ids.push_back(c.id());
  const CVector& phi = le.config().state;
  report.exact_expectation = expectation_exact(le, observable);
  report.quantum_expectation = inner(phi, observable.apply(phi)).real();
  report.abs_diff = std::abs(report.exact_expectation - report.quantum_expectation);
  report.exact_ok = report.abs_diff <= 1e-9;
  const McEstimate est = expectation_mc(le, observable);
  report.mc_estimate = est.estimate;
  report.mc_standard_error = est.standard_error;
  // 5 standard errors plus a float-noise floor: a degenerate value
  // distribution has se ~ 1e-18 while the two summation paths still differ
  // by last-bit rounding.
  const double mc_diff = std::abs(est.estimate - report.exact_expectation);
  report.mc_ok = mc_diff <= 5.0 * est.standard_error +
                                1e-9 * (1.0 + std::abs(report.exact_expectation));
  return report;
}

BornReport run_born(const CVector& state, const std::vector<Frame>& history_frames,
                    const CMatrix& observable, const ScenarioConfig& cfg) {
  return run_born(born_ensemble(state, history_frames, cfg), observable);
}

namespace {

double random_epsilon(Rng& rng) { return 0.1 + 0.55 * rng.uniform01(); }

/// Frame sharing the blocks of a random partition with cur (rotated within
/// blocks, order shuffled), or an unrelated random frame; never equivalent.
Frame next_related_frame(const Frame& cur, Rng& rng) {
  const std::size_t n = cur.dim();
  for (int attempt = 0; attempt < 16; ++attempt) {
    Frame candidate = rng.below(3) == 0
                          ? random_frame(n, rng)
                          : permuted(rotate_within_blocks(
                                         cur, random_partition(n, rng), rng),
                                     random_permutation(n, rng));
    if (!contexts_equivalent(cur, candidate)) return candidate;
  }
  throw AssertionFailureError("next_related_frame: no non-equivalent frame found");
}

History random_history(std::size_t n, std::size_t extra_steps, Rng& rng) {
  History h{Context(random_frame(n, rng))};
  for (std::size_t s = 0; s < extra_steps; ++s) {
    h = h.extended(Context(next_related_frame(h.back().frame(), rng)));
  }
  return h;
}

LabeledEnsemble build_ensemble(const History& h, double epsilon, std::uint64_t seed,
                               std::size_t n_samples, Rng& rng) {
  ModelConfig mc;
  mc.state = random_state(h.front().dim(), rng);
  mc.epsilon = epsilon;
  mc.base_context = h.front();
  mc.seed = seed;
  mc.n_samples = n_samples;
  LabeledEnsemble le = prepare(mc);
  for (std::size_t i = 1; i < h.size(); ++i) le = extend_history(le, h[i]);
  return le;
}

/// Diagonal in the context's frame with eigenvalues from an integer pool
/// (repeats allowed), so spectral gaps stay >= 1.
CMatrix random_stable_observable(const Context& c, Rng& rng,
                                 std::vector<double>* distinct = nullptr) {
  const std::size_t n = c.dim();
  const std::size_t n_distinct = 1 + rng.below(n);
  std::vector<double> pool;
  for (int v = -3; v <= 3; ++v) pool.push_back(v);
  for (std::size_t i = pool.size(); i > 1; --i) std::swap(pool[i - 1], pool[rng.below(i)]);
  pool.resize(n_distinct);

  CMatrix o(n);
  std::vector<bool> used(n_distinct, false);
  for (std::size_t i = 0; i < n; ++i) {
    // Cycle through the pool first so every chosen value appears.
    const std::size_t pick = i < n_distinct ? i : rng.below(n_distinct);
    used[pick] = true;
    o += pool[pick] * c.frame().projector(std::vector<std::size_t>{i});
  }
  if (distinct) {
    distinct->clear();
    for (std::size_t k = 0; k < n_distinct; ++k)
      if (used[k]) distinct->push_back(pool[k]);
  }
  CMatrix herm(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      herm(i, j) = 0.5 * (o(i, j) + std::conj(o(j, i)));
  return herm;
}

}  // namespace

SuiteReport run_gfunc_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport report{.suite = "gfunc", .trials = trials, .seed = seed};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const std::size_t n = 2 + t % 3;
    const History h = random_history(n, rng.below(4), rng);
    const LabeledEnsemble le =
        build_ensemble(h, random_epsilon(rng), mix_seed(seed, t * 2 + 1), 200, rng);

    std::vector<double> distinct;
    const CMatrix b = random_stable_observable(le.current(), rng, &distinct);
    EigenvalueTable f;
    for (double eig : distinct) {
      f.entries.emplace_back(eig, static_cast<double>(rng.below(5)) - 2.0);
    }
    try {
      const GFuncReport r = check_gfunc(le, b, f);
      report.max_residual = std::max(
          {report.max_residual, r.max_fn_dev, r.max_sum_dev, r.max_prod_dev});
    } catch (const GFuncViolationError&) {
      ++report.violations;
    }
  }
  return report;
}

SuiteReport run_ntrns_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport report{.suite = "ntrns", .trials = trials, .seed = seed};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const std::size_t n = 2 + t % 3;
    const History h = random_history(n, rng.below(3), rng);
    const LabeledEnsemble before =
        build_ensemble(h, random_epsilon(rng), mix_seed(seed, t * 2 + 1), 200, rng);

    // Build a next context that genuinely shares a partition (some block of
    // size >= 2) with the current one, plus an observable constant on blocks.
    std::vector<std::vector<std::size_t>> blocks;
    do {
      blocks = random_partition(n, rng);
    } while (blocks.size() == n);
    Frame next = permuted(rotate_within_blocks(before.current().frame(), blocks, rng),
                          random_permutation(n, rng));
    while (contexts_equivalent(before.current().frame(), next)) {
      next = permuted(rotate_within_blocks(before.current().frame(), blocks, rng),
                      random_permutation(n, rng));
    }
    CMatrix o(n);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      o += (static_cast<double>(k) + 1.0) * before.current().frame().projector(blocks[k]);
    }

    try {
      const LabeledEnsemble after = extend_history(before, Context(next));
      const NTrnsReport r = check_ntrns(before, after, o);
      report.max_residual = std::max(report.max_residual, r.max_dev);
    } catch (const NTrnsViolationError&) {
      ++report.violations;
    }
  }
  return report;
}

SuiteReport run_symplectic_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport report{.suite = "symplectic", .trials = trials, .seed = seed};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const std::size_t n = 2 + t % 7;
    const SymplecticReport r = symplectic_volume_check(random_unitary(n, rng));
    report.max_residual = std::max(
        {report.max_residual, r.symplectic_residual, std::abs(r.det - 1.0)});
    if (!r.ok()) ++report.violations;
  }
  return report;
}

SuiteReport run_born_suite(std::size_t trials, std::uint64_t seed,
                           std::size_t mc_samples) {
  SuiteReport report{.suite = "born", .trials = trials, .seed = seed};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const std::size_t n = 2 + t % 3;
    const History h = random_history(n, rng.below(5), rng);
    const LabeledEnsemble le = build_ensemble(h, random_epsilon(rng),
                                              mix_seed(seed, t * 2 + 1), mc_samples, rng);
    const CMatrix o = random_stable_observable(le.current(), rng);

    const double exact = expectation_exact(le, o);
    const double quantum =
        inner(le.config().state, o.apply(le.config().state)).real();
    const double diff = std::abs(exact - quantum);
    report.max_residual = std::max(report.max_residual, diff);
    const McEstimate est = expectation_mc(le, o);
    const double mc_diff = std::abs(est.estimate - exact);
    const bool mc_ok =
        mc_diff <= 5.0 * est.standard_error + 1e-9 * (1.0 + std::abs(exact));
    if (diff > 1e-9 || !mc_ok) ++report.violations;
  }
  return report;
}

SuiteReport run_dualpath_suite(std::size_t trials, std::uint64_t seed) {
  SuiteReport report{.suite = "dualpath", .trials = trials, .seed = seed};
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng(mix_seed(seed, t));
    const std::size_t n = 2 + t % 3;
    const History h = random_history(n, rng.below(4), rng);
    const LabeledEnsemble le =
        build_ensemble(h, random_epsilon(rng), mix_seed(seed, t * 2 + 1), 200, rng);
    const CMatrix o = random_stable_observable(le.current(), rng);

    const std::vector<double> direct = assign_value(le, o);
    const std::vector<double> pulled = assign_value_pullback(le, o);
    const double tol = 1e-9 * (1.0 + o.max_abs());
    bool bad = false;
    for (std::size_t k = 0; k < direct.size(); ++k) {
      const double dev = std::abs(direct[k] - pulled[k]);
      report.max_residual = std::max(report.max_residual, dev);
      bad = bad || dev > tol;
    }
    if (bad) ++report.violations;
  }
  return report;
}

}  // namespace ctxval
