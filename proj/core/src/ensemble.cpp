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

#include "ctxval/ensemble.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ctxval {

namespace {

constexpr double kMassTol = 1e-9;

std::vector<double> born_masses(const Context& c, const CVector& state) {
  const CVector z = c.frame().coefficients(state);
  std::vector<double> masses(z.dim());
  for (std::size_t i = 0; i < z.dim(); ++i) masses[i] = std::norm(z[i]);
  return masses;
}

}  // namespace

double Split::mass_of(std::size_t label) const {
  double m = 0.0;
  for (const Segment& s : segments)
    if (s.label == label) m += s.length();
  return m;
}

LabeledEnsemble prepare(const ModelConfig& config) {
  ModelConfig cfg = config;
  const std::size_t n = cfg.base_context.dim();
  if (n == 0) throw InvalidConfigError("prepare: empty base context");
  if (cfg.state.dim() != n) {
    throw InvalidConfigError("prepare: state dimension does not match base context");
  }
  if (std::abs(cfg.state.norm() - 1.0) > 1e-9) {
    throw InvalidConfigError("prepare: state is not a unit vector");
  }
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < kMaxEpsilon)) {
    throw InvalidConfigError("prepare: epsilon must lie in (0, sqrt(2)/2)");
  }
  if (cfg.n_samples == 0) throw InvalidConfigError("prepare: n_samples must be positive");
  cfg.state = cfg.state.normalized();

  LabeledEnsemble le(cfg, History(cfg.base_context));

  const std::vector<double> masses = born_masses(cfg.base_context, cfg.state);
  double cum = 0.0;
  for (std::size_t i = 0; i < n; ++i) cum += masses[i];
  if (std::abs(cum - 1.0) > 1e-12) {
    throw InvalidConfigError("prepare: masses do not sum to 1");
  }
  double lo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (masses[i] == 0.0) continue;
    const double hi = (i + 1 == n) ? 1.0 : lo + masses[i];
    le.split_.segments.push_back({lo, hi, i});
    lo = hi;
  }
  if (!le.split_.segments.empty()) le.split_.segments.back().hi = 1.0;

  Rng rng(mix_seed(cfg.seed, 0x707));
  le.samples_.reserve(cfg.n_samples);
  for (std::size_t k = 0; k < cfg.n_samples; ++k) {
    HiddenSample s;
    s.u = rng.uniform01();
    s.offset = sample_unit_ball(2 * n, rng);
    le.samples_.push_back(std::move(s));
  }
  return le;
}

LabeledEnsemble extend_history(const LabeledEnsemble& le, const Context& next) {
  ContextChange ch = change_unitary(le.current(), next);
  const std::vector<double> masses = born_masses(next, le.config().state);

  Split refined;
  for (std::size_t k = 0; k < ch.partitions.block_count(); ++k) {
    const auto& src_labels = ch.partitions.source_blocks[k];
    const auto& dst_labels = ch.partitions.target_blocks[k];

    std::vector<Segment> sources;
    for (const Segment& s : le.split().segments) {
      if (std::find(src_labels.begin(), src_labels.end(), s.label) != src_labels.end()) {
        sources.push_back(s);
      }
    }
    double block_len = 0.0;
    for (const Segment& s : sources) block_len += s.length();
    double block_mass = 0.0;
    for (std::size_t j : dst_labels) block_mass += masses[j];
    if (std::abs(block_len - block_mass) > kMassTol) {
      throw BlockMassMismatchError(
          "extend_history: block mass drifted by " +
          std::to_string(std::abs(block_len - block_mass)));
    }
    if (sources.empty()) continue;

    // Walk the block's segments left to right, carving each target's share
    // (ascending target index); the last nonzero target absorbs the block's
    // exact right boundary.
    std::vector<std::size_t> targets;
    for (std::size_t j : dst_labels)
      if (masses[j] > 0.0) targets.push_back(j);
    if (targets.empty()) {
      throw BlockMassMismatchError("extend_history: positive block with no targets");
    }

    std::size_t seg_idx = 0;
    double pos = sources[0].lo;
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const bool last = (t + 1 == targets.size());
      double remaining = (masses[targets[t]] / block_mass) * block_len;
      while (seg_idx < sources.size()) {
        const Segment& seg = sources[seg_idx];
        if (pos < seg.lo) pos = seg.lo;
        const double avail = seg.hi - pos;
        if (!last && remaining < avail) {
          const double cut = pos + remaining;
          if (cut > pos) refined.segments.push_back({pos, cut, targets[t]});
          pos = cut;
          remaining = 0.0;
          break;
        }
        if (seg.hi > pos) refined.segments.push_back({pos, seg.hi, targets[t]});
        remaining -= avail;
        ++seg_idx;
        if (seg_idx < sources.size()) pos = sources[seg_idx].lo;
        if (!last && remaining <= 0.0) break;
      }
    }
  }
  std::sort(refined.segments.begin(), refined.segments.end(),
            [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
  // Coalesce touching same-label segments left over from the block walks.
  std::vector<Segment> merged;
  for (const Segment& s : refined.segments) {
    if (!merged.empty() && merged.back().label == s.label &&
        merged.back().hi == s.lo) {
      merged.back().hi = s.hi;
    } else {
      merged.push_back(s);
    }
  }
  refined.segments = std::move(merged);

  LabeledEnsemble out(le.config(), le.history().extended(next));
  out.changes_ = le.changes();
  out.changes_.push_back(std::move(ch));
  out.split_ = std::move(refined);
  out.samples_ = le.samples();
  return out;
}

std::size_t label_of(const LabeledEnsemble& le, const HiddenSample& s) {
  const auto& segs = le.split().segments;
  auto it = std::upper_bound(segs.begin(), segs.end(), s.u,
                             [](double u, const Segment& seg) { return u < seg.hi; });
  if (it == segs.end() || s.u < it->lo) {
    throw UnlabeledPointError("label_of: u = " + std::to_string(s.u) +
                              " falls outside every segment");
  }
  return it->label;
}

PhasePoint position_of(const LabeledEnsemble& le, const HiddenSample& s) {
  const std::size_t label = label_of(le, s);
  const std::size_t n = le.current().dim();
  const CVector z = le.current().frame().coefficients(le.config().state);
  const double amp = std::abs(z[label]);
  if (amp == 0.0) {
    throw ZeroMassLabelError("position_of: label has zero Born mass");
  }
  const double radius =
      le.config().epsilon * std::pow(amp, 1.0 / static_cast<double>(n));
  const Chart chart(le.history().front());
  PhasePoint p = iota(chart, le.current().frame()[label]);
  for (std::size_t i = 0; i < 2 * n; ++i) p.coords[i] += radius * s.offset[i];
  return p;
}

std::vector<double> assign_value(const LabeledEnsemble& le, const CMatrix& o) {
  const std::vector<double> values = stable_eigenvalues(o, le.current());
  std::vector<double> out;
  out.reserve(le.samples().size());
  for (const HiddenSample& s : le.samples()) {
    out.push_back(values[label_of(le, s)]);
  }
  return out;
}

std::vector<double> assign_value_pullback(const LabeledEnsemble& le, const CMatrix& o) {
  if (!is_stable(o, le.current())) {
    throw NotStableError("assign_value_pullback: observable not stable in the "
                         "current context");
  }
  const std::size_t n = le.current().dim();
  const Chart chart(le.history().front());

  // Pull the observable back to the base context and precompute per-step
  // coordinate maps and per-label image-ball data.
  CMatrix pulled = o;
  std::vector<CoordinateMap> maps;
  maps.reserve(le.changes().size());
  for (auto it = le.changes().rbegin(); it != le.changes().rend(); ++it) {
    pulled = it->unitary.adjoint() * pulled * it->unitary;
    maps.emplace_back(chart, *it);
  }
  const TubeClassifier classifier(pulled, le.history().front(), le.config().epsilon);

  const CVector z = le.current().frame().coefficients(le.config().state);
  std::vector<PhasePoint> centers(n);
  std::vector<double> radii(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double amp = std::abs(z[i]);
    if (amp == 0.0) continue;
    centers[i] = iota(chart, le.current().frame()[i]);
    radii[i] = le.config().epsilon * std::pow(amp, 1.0 / static_cast<double>(n));
  }

  std::vector<double> out;
  out.reserve(le.samples().size());
  std::vector<double> a(2 * n), b(2 * n);
  for (const HiddenSample& s : le.samples()) {
    const std::size_t label = label_of(le, s);
    if (radii[label] == 0.0) {
      throw ZeroMassLabelError("assign_value_pullback: zero-mass label");
    }
    for (std::size_t i = 0; i < 2 * n; ++i) {
      a[i] = centers[label].coords[i] + radii[label] * s.offset[i];
    }
    double* cur = a.data();
    double* nxt = b.data();
    for (const CoordinateMap& map : maps) {
      map.apply(std::span<const double>(cur, 2 * n), std::span<double>(nxt, 2 * n),
                /*inverse=*/true);
      std::swap(cur, nxt);
    }
    const auto value = classifier.classify(std::span<const double>(cur, 2 * n));
    if (!value) {
      throw AssertionFailureError("assign_value_pullback: pulled-back point left "
                                  "every tube (broken geometry)");
    }
    out.push_back(*value);
  }
  return out;
}

double expectation_exact(const LabeledEnsemble& le, const CMatrix& o) {
  const std::vector<double> values = stable_eigenvalues(o, le.current());
  double e = 0.0;
  for (const Segment& s : le.split().segments) e += s.length() * values[s.label];
  return e;
}

McEstimate expectation_mc(const LabeledEnsemble& le, const CMatrix& o) {
  const std::vector<double> values = assign_value(le, o);
  const std::size_t n = values.size();
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(n);
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  McEstimate mc;
  mc.estimate = mean;
  mc.standard_error =
      n > 1 ? std::sqrt(var / (static_cast<double>(n) * static_cast<double>(n - 1)))
            : 0.0;
  return mc;
}

GFuncReport check_gfunc(const LabeledEnsemble& le, const CMatrix& b, const RealFn& f) {
  const SpectralForm form = stable_spectral_form(b, le.current());
  const CMatrix a = apply_fn_spectral(b, f);
  if (!is_stable(a, le.current())) {
    throw AssertionFailureError("check_gfunc: f(B) lost stability");
  }

  // f evaluated once per eigenvalue block, never on raw sample values.
  const std::size_t n = le.current().dim();
  std::vector<double> f_of_label(n, 0.0);
  for (const auto& block : form.blocks) {
    const double fv = f(block.eigenvalue);
    for (std::size_t i : block.indices) f_of_label[i] = fv;
  }

  const std::vector<double> vb = assign_value(le, b);
  const std::vector<double> va = assign_value(le, a);
  const std::vector<double> vsum = assign_value(le, a + b);
  const std::vector<double> vprod = assign_value(le, a * b);

  const double scale = 1.0 + std::max({a.max_abs(), b.max_abs(), (a * b).max_abs()});
  const double tol = 1e-9 * scale;

  GFuncReport report;
  report.samples_checked = vb.size();
  for (std::size_t k = 0; k < vb.size(); ++k) {
    const std::size_t label = label_of(le, le.samples()[k]);
    const double fn_dev = std::abs(va[k] - f_of_label[label]);
    const double sum_dev = std::abs(vsum[k] - (va[k] + vb[k]));
    const double prod_dev = std::abs(vprod[k] - va[k] * vb[k]);
    report.max_fn_dev = std::max(report.max_fn_dev, fn_dev);
    report.max_sum_dev = std::max(report.max_sum_dev, sum_dev);
    report.max_prod_dev = std::max(report.max_prod_dev, prod_dev);
    if (fn_dev > tol || sum_dev > tol || prod_dev > tol) {
      throw GFuncViolationError("gFUNC violated at sample " + std::to_string(k) +
                                ": fn_dev=" + std::to_string(fn_dev) +
                                " sum_dev=" + std::to_string(sum_dev) +
                                " prod_dev=" + std::to_string(prod_dev));
    }
  }
  return report;
}

NTrnsReport check_ntrns(const LabeledEnsemble& before, const LabeledEnsemble& after,
                        const CMatrix& o) {
  if (after.history().size() != before.history().size() + 1) {
    throw InvalidConfigError("check_ntrns: after must extend before by one context");
  }
  for (std::size_t i = 0; i < before.history().size(); ++i) {
    if (before.history()[i].id() != after.history()[i].id()) {
      throw InvalidConfigError("check_ntrns: histories do not share a prefix");
    }
  }
  if (!is_stable(o, before.current()) || !is_stable(o, after.current())) {
    throw NotStableError("check_ntrns: observable must be stable in both of the "
                         "last two contexts");
  }

  const std::vector<double> vb = assign_value(before, o);
  const std::vector<double> va = assign_value(after, o);
  const double tol = 1e-9 * (1.0 + o.max_abs());

  NTrnsReport report;
  report.samples_checked = vb.size();
  for (std::size_t k = 0; k < vb.size(); ++k) {
    const double dev = std::abs(vb[k] - va[k]);
    report.max_dev = std::max(report.max_dev, dev);
    if (dev > tol) {
      throw NTrnsViolationError("n-TRNS violated at sample " + std::to_string(k) +
                                ": |" + std::to_string(vb[k]) + " - " +
                                std::to_string(va[k]) + "|");
    }
  }
  return report;
}

}  // namespace ctxval
