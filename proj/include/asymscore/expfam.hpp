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

// One-parameter exponential families p(x) = h(x) exp(eta T(x) - A(eta)).

#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "asymscore/families.hpp"

namespace asymscore::families {

enum class Omega { kPositive, kReal };

class ExpFamDescriptor {
 public:
  using Fn = std::function<double(double)>;
  using MemberFn = std::function<DistPtr(double)>;

  struct Parts {
    std::string kind;
    std::vector<double> fixed;
    Omega omega;
    std::string conventional;  // name of the conventional parameter
    Fn T;
    Fn A;
    Fn dA;
    Fn d2A;
    Fn to_natural;
    Fn from_natural;
    MemberFn member;
  };

  explicit ExpFamDescriptor(Parts parts);

  const std::string& kind() const { return parts_.kind; }
  const std::vector<double>& fixed() const { return parts_.fixed; }
  Omega omega() const { return parts_.omega; }
  const std::string& conventional() const { return parts_.conventional; }
  bool in_omega(double eta) const;

  double T(double x) const { return parts_.T(x); }
  double logA(double eta) const;
  double dA(double eta) const;
  double d2A(double eta) const;
  double to_natural(double conventional) const;
  double from_natural(double eta) const;
  DistPtr member(double eta) const;

  /// d_A(eta1, eta2) = A(eta1) - A(eta2) - A'(eta2)(eta1 - eta2), which is
  /// the KL divergence of member(eta1) from member(eta2).
  double bregman(double eta1, double eta2) const;

  /// Inverse of the strictly increasing map A' by bracketing and bisection.
  /// Throws ExpectationOutsideRange when m is not attained on omega.
  double dA_inverse(double m) const;

 private:
  void check(double eta) const;
  Parts parts_;
};

/// Catalog kinds, in a fixed order.
const std::vector<std::string>& expfam_catalog();

/// Builds a catalog descriptor. `fixed` holds the nuisance parameters
/// (missing entries take the defaults listed in the catalog).
ExpFamDescriptor expfam_descriptor(std::string_view kind,
                                   const std::vector<double>& fixed = {});

/// Parses "kind[:p1,p2]".
ExpFamDescriptor parse_expfam(std::string_view spec);

}  // namespace asymscore::families
