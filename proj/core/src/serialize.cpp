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

#include "ctxval/serialize.hpp"

#include <json.hpp>

#include <sstream>

namespace ctxval {

namespace {

using ojson = nlohmann::ordered_json;

ojson cplx_to_json(const cplx& z) { return ojson::array({z.real(), z.imag()}); }

cplx cplx_from_json(const ojson& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw FormatError("complex scalar must be a [re, im] pair");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

ojson vector_to_json(const CVector& v) {
  ojson a = ojson::array();
  for (std::size_t i = 0; i < v.dim(); ++i) a.push_back(cplx_to_json(v[i]));
  return a;
}

CVector vector_from_json(const ojson& j) {
  if (!j.is_array() || j.empty()) throw FormatError("vector must be a nonempty array");
  CVector v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v[i] = cplx_from_json(j[i]);
  return v;
}

ojson matrix_to_json(const CMatrix& m) {
  ojson rows = ojson::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    ojson row = ojson::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(cplx_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from(const ojson& rows) {
  if (!rows.is_array() || rows.empty()) throw FormatError("matrix must be a nonempty array");
  CMatrix m(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ojson& row = rows[i];
    if (!row.is_array() || row.size() != rows.size()) {
      throw FormatError("matrix rows must all have the matrix dimension");
    }
    for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = cplx_from_json(row[j]);
  }
  return m;
}

ojson frame_to_json(const Frame& f) {
  ojson j;
  j["n"] = f.dim();
  ojson vs = ojson::array();
  for (const CVector& v : f.vectors()) vs.push_back(vector_to_json(v));
  j["vectors"] = std::move(vs);
  return j;
}

Frame frame_from(const ojson& j) {
  if (!j.is_object() || !j.contains("vectors")) {
    throw FormatError("frame document must contain a 'vectors' array");
  }
  const ojson& vs = j["vectors"];
  if (!vs.is_array() || vs.empty()) throw FormatError("'vectors' must be nonempty");
  std::vector<CVector> vectors;
  vectors.reserve(vs.size());
  for (const ojson& v : vs) vectors.push_back(vector_from_json(v));
  if (j.contains("n") && j["n"].get<std::size_t>() != vectors.size()) {
    throw FormatError("frame 'n' does not match the vector count");
  }
  try {
    return Frame(std::move(vectors));
  } catch (const Error& e) {
    throw FormatError(std::string("frame is not orthonormal: ") + e.what());
  }
}

ojson blocks_to_json(const std::vector<std::vector<std::size_t>>& blocks) {
  ojson out = ojson::array();
  for (const auto& block : blocks) {
    ojson b = ojson::array();
    for (std::size_t i : block) b.push_back(i + 1);  // 1-based in documents
    out.push_back(std::move(b));
  }
  return out;
}

ojson parse(std::string_view text) {
  try {
    return ojson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const ojson& j) { return j.dump(2); }

}  // namespace

std::string to_json(const CVector& v) {
  ojson j;
  j["entries"] = vector_to_json(v);
  return dump(j);
}

std::string to_json(const CMatrix& m) {
  ojson j;
  j["entries"] = matrix_to_json(m);
  return dump(j);
}

std::string to_json(const Frame& f) { return dump(frame_to_json(f)); }

std::string to_json(const Context& c) {
  ojson j;
  j["id"] = c.id();
  j["frame"] = frame_to_json(c.frame());
  return dump(j);
}

std::string to_json(const PartitionPair& p) {
  ojson j;
  j["m"] = p.block_count();
  j["blocks_a"] = blocks_to_json(p.source_blocks);
  j["blocks_b"] = blocks_to_json(p.target_blocks);
  return dump(j);
}

std::string to_json(const LabeledEnsemble& le) {
  ojson j;
  j["state"] = vector_to_json(le.config().state);
  j["epsilon"] = le.config().epsilon;
  j["seed"] = le.config().seed;
  j["n_samples"] = le.config().n_samples;
  ojson hist = ojson::array();
  for (const Context& c : le.history().contexts()) hist.push_back(c.id());
  j["history"] = std::move(hist);
  ojson segs = ojson::array();
  for (const Segment& s : le.split().segments) {
    segs.push_back(ojson::array({s.lo, s.hi, s.label + 1}));
  }
  j["segments"] = std::move(segs);
  ojson us = ojson::array();
  ojson es = ojson::array();
  for (const HiddenSample& s : le.samples()) {
    us.push_back(s.u);
    ojson e = ojson::array();
    for (double x : s.offset) e.push_back(x);
    es.push_back(std::move(e));
  }
  j["samples"]["u"] = std::move(us);
  j["samples"]["e"] = std::move(es);
  return dump(j);
}

std::string to_json(const PeresReport& r) {
  ojson j;
  j["scenario"] = "peres";
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["samples"] = r.n_samples;
  j["product_value"] = r.product_value;
  j["noncontextual_product"] = r.noncontextual_product;
  j["contradiction_verified"] = r.contradiction_verified;
  j["acrl_ok"] = r.acrl_ok;
  j["dual_path_checked"] = r.dual_path_checked;
  j["dual_path_ok"] = r.dual_path_ok;
  j["hysteresis"]["x_flips"] = r.flips_x;
  j["hysteresis"]["y_flips"] = r.flips_y;
  j["hysteresis"]["flags"] = r.hysteresis_flags;
  ojson hv;
  for (const auto& [label, values] : r.per_history_values) hv[label] = values;
  j["per_history_values"] = std::move(hv);
  ojson st;
  for (const auto& [obs, ctxs] : r.stability_table) st[obs] = ctxs;
  j["stability_table"] = std::move(st);
  return dump(j);
}

std::string to_json(const RemarkReport& r) {
  ojson j;
  j["scenario"] = "remark";
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["samples"] = r.n_samples;
  j["matrices_match"] = r.matrices_match;
  j["stable_in_both"] = r.stable_in_both;
  j["route_consistent"] = r.route_consistent;
  j["max_route_dev"] = r.max_route_dev;
  return dump(j);
}

std::string to_json(const BornReport& r) {
  ojson j;
  j["scenario"] = "born";
  j["epsilon"] = r.epsilon;
  j["seed"] = r.seed;
  j["samples"] = r.n_samples;
  j["history"] = r.history_ids;
  j["exact_expectation"] = r.exact_expectation;
  j["quantum_expectation"] = r.quantum_expectation;
  j["abs_diff"] = r.abs_diff;
  j["mc_estimate"] = r.mc_estimate;
  j["mc_standard_error"] = r.mc_standard_error;
  j["exact_ok"] = r.exact_ok;
  j["mc_ok"] = r.mc_ok;
  return dump(j);
}

std::string to_json(const SuiteReport& r) {
  ojson j;
  j["suite"] = r.suite;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["violations"] = r.violations;
  j["max_residual"] = r.max_residual;
  j["ok"] = r.ok();
  return dump(j);
}

CVector state_from_json(std::string_view text) {
  const ojson j = parse(text);
  if (j.is_object() && j.contains("entries")) return vector_from_json(j["entries"]);
  if (j.is_array()) return vector_from_json(j);
  throw FormatError("state document must be {'entries': [...]} or a bare array");
}

CMatrix matrix_from_json(std::string_view text) {
  const ojson j = parse(text);
  if (j.is_object() && j.contains("entries")) return matrix_from(j["entries"]);
  if (j.is_array()) return matrix_from(j);
  throw FormatError("matrix document must be {'entries': [...]} or a bare array");
}

Frame frame_from_json(std::string_view text) { return frame_from(parse(text)); }

Context context_from_json(std::string_view text) {
  const ojson j = parse(text);
  if (j.is_object() && j.contains("frame")) return Context(frame_from(j["frame"]));
  return Context(frame_from(j));
}

std::vector<Frame> history_from_json(std::string_view text) {
  const ojson j = parse(text);
  const ojson* list = nullptr;
  if (j.is_object() && j.contains("contexts")) {
    list = &j["contexts"];
  } else if (j.is_array()) {
    list = &j;
  } else {
    throw FormatError("history document must be {'contexts': [...]} or an array");
  }
  if (!list->is_array() || list->empty()) {
    throw FormatError("history must contain at least one frame");
  }
  std::vector<Frame> frames;
  frames.reserve(list->size());
  for (const ojson& f : *list) frames.push_back(frame_from(f));
  return frames;
}

namespace {

const char* yesno(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string to_table(const PeresReport& r) {
  std::ostringstream os;
  os << "peres scenario (epsilon=" << r.epsilon << ", seed=" << r.seed
     << ", samples=" << r.n_samples << ")\n";
  os << "  product value v_ξ((σx⊗σy)(σy⊗σx))  " << r.product_value << "\n";
  os << "  noncontextual product              " << (r.noncontextual_product > 0 ? "+1" : "-1")
     << "\n";
  os << "  contradiction verified             " << yesno(r.contradiction_verified) << "\n";
  os << "  anticorrelation per sample         " << yesno(r.acrl_ok) << "\n";
  os << "  dual-path values agree             "
     << (r.dual_path_checked ? yesno(r.dual_path_ok) : "not checked") << "\n";
  os << "  hysteresis flips                   x: " << r.flips_x << "  y: " << r.flips_y
     << "\n";
  os << "  histories                          ";
  for (std::size_t i = 0; i < r.per_history_values.size(); ++i) {
    if (i) os << ", ";
    os << r.per_history_values[i].first;
  }
  os << "\n  stability table\n";
  for (const auto& [obs, ctxs] : r.stability_table) {
    os << "    " << obs << "  ◁  ";
    for (std::size_t i = 0; i < ctxs.size(); ++i) {
      if (i) os << ", ";
      os << ctxs[i];
    }
    os << "\n";
  }
  return os.str();
}

std::string to_table(const RemarkReport& r) {
  std::ostringstream os;
  os << "remark scenario (epsilon=" << r.epsilon << ", seed=" << r.seed
     << ", samples=" << r.n_samples << ")\n";
  os << "  f(B) = g(C) = A as matrices   " << yesno(r.matrices_match) << "\n";
  os << "  A stable in both contexts     " << yesno(r.stable_in_both) << "\n";
  os << "  route-consistent per sample   " << yesno(r.route_consistent) << "\n";
  os << "  max route deviation           " << r.max_route_dev << "\n";
  return os.str();
}

std::string to_table(const BornReport& r) {
  std::ostringstream os;
  os << "born check (epsilon=" << r.epsilon << ", seed=" << r.seed
     << ", samples=" << r.n_samples << ")\n";
  os << "  history contexts        " << r.history_ids.size() << "\n";
  os << "  exact expectation       " << r.exact_expectation << "\n";
  os << "  quantum expectation     " << r.quantum_expectation << "\n";
  os << "  |difference|            " << r.abs_diff << " (ok: " << yesno(r.exact_ok)
     << ")\n";
  os << "  monte carlo             " << r.mc_estimate << " ± " << r.mc_standard_error
     << " (ok: " << yesno(r.mc_ok) << ")\n";
  return os.str();
}

std::string to_table(const SuiteReport& r) {
  std::ostringstream os;
  os << "check suite '" << r.suite << "' (trials=" << r.trials << ", seed=" << r.seed
     << ")\n";
  os << "  violations     " << r.violations << "\n";
  os << "  max residual   " << r.max_residual << "\n";
  os << "  result         " << (r.ok() ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string to_table(const PartitionPair& p) {
  std::ostringstream os;
  auto print_blocks = [&os](const std::vector<std::vector<std::size_t>>& blocks) {
    os << "{";
    for (std::size_t k = 0; k < blocks.size(); ++k) {
      if (k) os << ",";
      os << "{";
      for (std::size_t i = 0; i < blocks[k].size(); ++i) {
        if (i) os << ",";
        os << blocks[k][i] + 1;
      }
      os << "}";
    }
    os << "}";
  };
  os << "finest partitions (m = " << p.block_count() << ")\n  I: ";
  print_blocks(p.source_blocks);
  os << "\n  J: ";
  print_blocks(p.target_blocks);
  os << "\n";
  return os.str();
}

}  // namespace ctxval
