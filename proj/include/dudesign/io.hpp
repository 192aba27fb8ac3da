// Copyright 2026 The dudesign Authors
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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "dudesign/biunitary.hpp"
#include "dudesign/circuit.hpp"
#include "dudesign/ensemble.hpp"
#include "dudesign/states.hpp"
#include "dudesign/transfer.hpp"

namespace dudesign {

using Json = nlohmann::json;

/// Complex numbers are stored as [re, im]; matrices as row-major nested arrays.
Json complex_to_json(cdouble z);
cdouble complex_from_json(const Json &j);
Json matrix_to_json(const ComplexMatrix &m);
ComplexMatrix matrix_from_json(const Json &j);

/// {"kind":"gate","q":q,"entries":[[re,im],...],"certificates":{...}}, entries in (a,b,c,d)
/// row-major order.
Json gate_to_json(const Gate &gate, double tol = kDefaultTol);
/// Accepts "entries" (flat) or "matrix" (nested rows). No unitarity requirement.
Gate gate_from_json(const Json &j);

Json hadamard_to_json(const ComplexHadamard &h);
ComplexHadamard hadamard_from_json(const Json &j, double tol = kDefaultTol);

Json ueb_to_json(const UnitaryErrorBasis &basis);
UnitaryErrorBasis ueb_from_json(const Json &j, double tol = kDefaultTol);

/// {"kind":"mps","q","chi","tensors":{"i,j":matrix},"boundary":"trace"|{"left","right"}}.
Json mps_to_json(const SolvableMPS &mps);
SolvableMPS mps_from_json(const Json &j);

/// {"N","q","t","layout":"odd-first"|"even-first","gates":"floquet:<id>"|table,"seed"}.
/// A table is [step][layer][k] of gate objects.
Json circuit_spec_to_json(const CircuitSpec &spec, const std::string &floquet_id = "");
CircuitSpec circuit_spec_from_json(const Json &j, const std::function<Gate(const std::string &)> &resolve_gate);

Json ensemble_to_json(const ProjectedEnsemble &ens);
Json moment_to_json(const MomentOperator &moment);
Json spectral_report_to_json(const SpectralReport &report);

Json read_json_file(const std::string &path);
void write_json_file(const std::string &path, const Json &j);

std::string layout_name(Layout layout);
Layout layout_from_name(const std::string &name);

/// 64-bit FNV-1a hash, hex encoded.
std::string fnv1a_hex(const std::string &text);

}  // namespace dudesign
