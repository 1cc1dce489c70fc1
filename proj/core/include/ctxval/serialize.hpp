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

#pragma once

#include <string>
#include <string_view>

#include "ctxval/scenarios.hpp"

namespace ctxval {

// Structured-text (JSON) formats. Complex scalars serialize as [re, im]
// pairs; binary64 values round-trip bit-exactly. Frame/partition indices are
// 1-based in documents and reports.

std::string to_json(const CVector& v);
std::string to_json(const CMatrix& m);
std::string to_json(const Frame& f);
std::string to_json(const Context& c);
std::string to_json(const PartitionPair& p);
std::string to_json(const LabeledEnsemble& le);
std::string to_json(const PeresReport& r);
std::string to_json(const RemarkReport& r);
std::string to_json(const BornReport& r);
std::string to_json(const SuiteReport& r);

CVector state_from_json(std::string_view text);
CMatrix matrix_from_json(std::string_view text);
Frame frame_from_json(std::string_view text);
Context context_from_json(std::string_view text);
std::vector<Frame> history_from_json(std::string_view text);

// Human-readable fixed-width summaries.
std::string to_table(const PeresReport& r);
std::string to_table(const RemarkReport& r);
std::string to_table(const BornReport& r);
std::string to_table(const SuiteReport& r);
std::string to_table(const PartitionPair& p);

}  // namespace ctxval
