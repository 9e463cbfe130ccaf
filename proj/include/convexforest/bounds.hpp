#pragma once

#include "convexforest/matchings.hpp"
#include "convexforest/numeric.hpp"
#include "convexforest/simplex.hpp"

#include <array>
#include <string>
#include <vector>

namespace convexforest {

// Components [v, w, x, y, z] in the roles of [a0, a1, b0, b1, e].
using BoundVector = std::array<Real, 5>;

struct SetSEntry {
  int index;  // 1..62
  int group;  // 1..4
  BoundVector v;
};

// The 62 vectors evaluated from their closed forms. Throws VerificationError
// if an entry is negative or breaks its group's zero pattern.
const std::vector<SetSEntry>& SetSVectors();

BoundVector BilinearB(const BoundVector& a, const BoundVector& b);
BoundVector ToBoundVector(const MatchVector& v, const Real& scale = 1);

enum class Membership { kMember, kNotMember, kNumericalFailure };
const char* ToString(Membership m);

struct MembershipResult {
  Membership status = Membership::kNumericalFailure;
  // Largest t with target + t <= sum c_v v componentwise; member iff t >= -tol.
  Real slack = 0;
  std::vector<Real> certificate;  // c_v, one per vector of the set
  LpStatus lp_status = LpStatus::kNumericalFailure;
};

// Is target dominated by a convex combination of the set's vectors?
MembershipResult ConvMembership(const BoundVector& target, const Real& tol = Real("1e-9"));

// Max over the certificate of (sum c_v v - target), negated: should be >= -tol.
Real CertificateResidual(const BoundVector& target, const std::vector<Real>& certificate);

struct PairCheck {
  int i, j;  // 1-based
  Membership status;
  double slack;
};

struct SetSReport {
  bool property1 = false;
  std::vector<PairCheck> pairs;  // ordered by (i, j)
  double worst_slack = 0;
  int worst_i = 0, worst_j = 0;
  std::vector<PairCheck> tight;  // slack below 10 tol
  int checks = 0;
  int failures = 0;
  bool passed() const { return property1 && failures == 0; }
};

SetSReport VerifySetS(const Real& tol = Real("1e-9"), int jobs = 1);

// Zero-pattern closure of B over the groups; returns the violations found.
std::vector<std::string> CheckGroupClosure(const Real& tol = Real("1e-30"));

// Largest value of each component over the set.
BoundVector ComponentMaxima();

}  // namespace convexforest
