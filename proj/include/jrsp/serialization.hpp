// Copyright 2026 The jrsp4 Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

// JSON and CSV renderings of reports, tables and audits. Output text is a
// pure function of its input, so equal inputs give byte-identical files.

#include <string>

#include "jrsp/corrections.hpp"
#include "jrsp/protocol_engine.hpp"
#include "jrsp/verifier.hpp"

namespace jrsp {

std::string report_json(const ProtocolReport& report);

/// Columns: outcome_key, probability, success, correction, fidelity.
std::string report_csv(const ProtocolReport& report);

/// Both tables plus their diff.
std::string tables_json(const CorrectionTable& derived, const CorrectionTable& transcribed);

std::string audit_json(const AuditReport& audit);

}  // namespace jrsp
