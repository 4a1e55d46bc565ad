// Copyright 2026 The qprod Authors
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

#include "qprod/error.hpp"

namespace qprod {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "InvalidArgument";
        case ErrorCode::kMemoryOverflow:
            return "MemoryOverflow";
        case ErrorCode::kAlphabetMismatch:
            return "AlphabetMismatch";
        case ErrorCode::kSizeLimit:
            return "SizeLimit";
        case ErrorCode::kTapeOverflow:
            return "TapeOverflow";
        case ErrorCode::kMalformedEncoding:
            return "MalformedEncoding";
        case ErrorCode::kEncodingClash:
            return "EncodingClash";
        case ErrorCode::kNonDeterministic:
            return "NonDeterministic";
        case ErrorCode::kNormDrift:
            return "NormDrift";
        case ErrorCode::kZeroProbability:
            return "ZeroProbability";
        case ErrorCode::kKZero:
            return "KZero";
        case ErrorCode::kParse:
            return "Parse";
    }
    return "Unknown";
}

Error::Error(ErrorCode code, const std::string &message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {
}

}  // namespace qprod
