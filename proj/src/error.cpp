// Copyright 2026 The asymscore Authors
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

#include "asymscore/error.hpp"

namespace asymscore {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnknownKind:
      return "UnknownKind";
    case ErrorCode::kParameterOutOfDomain:
      return "ParameterOutOfDomain";
    case ErrorCode::kMissingCapability:
      return "MissingCapability";
    case ErrorCode::kMomentRequired:
      return "MomentRequired";
    case ErrorCode::kNonIntegrable:
      return "NonIntegrable";
    case ErrorCode::kNonIntegrableWeight:
      return "NonIntegrableWeight";
    case ErrorCode::kNegativeSupportPowerWeight:
      return "NegativeSupportPowerWeight";
    case ErrorCode::kInvalidWeight:
      return "InvalidWeight";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kTooFewLevels:
      return "TooFewLevels";
    case ErrorCode::kAtom:
      return "Atom";
    case ErrorCode::kCrossing:
      return "Crossing";
    case ErrorCode::kDegenerateSpacing:
      return "DegenerateSpacing";
    case ErrorCode::kTooFewSamples:
      return "TooFewSamples";
    case ErrorCode::kZeroVariance:
      return "ZeroVariance";
    case ErrorCode::kInfiniteMoments:
      return "InfiniteMoments";
    case ErrorCode::kUnsupported:
      return "Unsupported";
    case ErrorCode::kAsymmetricBaseForLogLoss:
      return "AsymmetricBaseForLogLoss";
    case ErrorCode::kNotLogAffinePartition:
      return "NotLogAffinePartition";
    case ErrorCode::kNotAShift:
      return "NotAShift";
    case ErrorCode::kNotSymmetricRescalable:
      return "NotSymmetricRescalable";
    case ErrorCode::kExpectationOutsideRange:
      return "ExpectationOutsideRange";
    case ErrorCode::kEmptyPairs:
      return "EmptyPairs";
    case ErrorCode::kDegenerateGroup:
      return "DegenerateGroup";
    case ErrorCode::kSeriesTooShort:
      return "SeriesTooShort";
    case ErrorCode::kNonConvergence:
      return "NonConvergence";
    case ErrorCode::kDataError:
      return "DataError";
  }
  return "Unknown";
}

}  // namespace asymscore
