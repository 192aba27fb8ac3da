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

#include "dudesign/error.hpp"

namespace dudesign {

std::string_view error_kind_name(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimension:
            return "invalid-dimension";
        case ErrorKind::Shape:
            return "shape";
        case ErrorKind::NotHermitian:
            return "not-hermitian";
        case ErrorKind::Rank:
            return "rank";
        case ErrorKind::InvalidHadamard:
            return "invalid-hadamard";
        case ErrorKind::InvalidUeb:
            return "invalid-ueb";
        case ErrorKind::DigitOutOfRange:
            return "digit-out-of-range";
        case ErrorKind::DegenerateState:
            return "degenerate-state";
        case ErrorKind::SiteOutOfRange:
            return "site-out-of-range";
        case ErrorKind::DimensionMismatch:
            return "dimension-mismatch";
        case ErrorKind::CapExceeded:
            return "cap-exceeded";
        case ErrorKind::DimensionTooSmall:
            return "dimension-too-small";
        case ErrorKind::Overflow:
            return "overflow";
        case ErrorKind::MissingTensor:
            return "missing-tensor";
        case ErrorKind::NotUnitary:
            return "not-unitary";
        case ErrorKind::Parse:
            return "parse";
        case ErrorKind::Inconsistent:
            return "inconsistent";
    }
    return "unknown";
}

Error::Error(ErrorKind kind, const std::string &message)
    : std::runtime_error(std::string(error_kind_name(kind)) + ": " + message), kind_(kind) {
}

void fail(ErrorKind kind, const std::string &message) {
    throw Error(kind, message);
}

}  // namespace dudesign
