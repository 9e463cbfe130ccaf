#include "convexforest/bounds.hpp"

#include "convexforest/parallel.hpp"

#include <algorithm>
#include <mutex>

namespace convexforest {

namespace {

using boost::multiprecision::abs;

// num/den * R^(-half_power/2), R = 2793745.
struct Term {
  const char* num;
  const char* den;
  int half_power;
};

struct VectorSpec {
  int index;
  int group;
  int alpha_power;  // the vector is alpha^(-alpha_power) * components
  std::vector<Term> comp[5];
};

// The 62 vectors, transcribed term by term from their closed forms. Groups:
// 1 (x = y = z = 0), 2 (w = x = z = 0), 3 (w = z = 0, v = y), 4 (v = w = x = y = 0).
const VectorSpec kSetS[] = {
    {1, 1, 2, {{{"1", "1", 0}}, {}, {}, {}, {}}},
    {2, 1, 6, {{{"2", "1", 0}, {"3446", "1", 1}}, {{"2", "1", 0}, {"3170", "1", 1}}, {}, {}, {}}},
    {3, 1, 6, {{{"4", "1", 0}}, {{"4", "1", 0}}, {}, {}, {}}},
    {4, 1, 21, {{{"2016", "1", 0}, {"3380832", "1", 1}}, {{"2208", "1", 0}, {"3671904", "1", 1}}, {}, {}, {}}},
    {5, 1, 21, {{{"4032", "1", 0}}, {{"4416", "1", 0}}, {}, {}, {}}},
    {6, 1, 21, {{{"2016", "1", 0}, {"3367584", "1", 1}}, {{"2208", "1", 0}, {"3693984", "1", 1}}, {}, {}, {}}},
    {7, 1, 21, {{{"3367584", "1", 1}, {"5628705696", "1", 2}}, {{"3693984", "1", 1}, {"6174294432", "1", 2}}, {}, {}, {}}},
    {8, 1, 14, {{{"1969470208", "9", 2}, {"3291861361024", "9", 3}}, {{"2179611976", "9", 2}, {"3643134552760", "9", 3}}, {}, {}, {}}},
    {9, 1, 10, {{{"12", "1", 0}, {"20676", "1", 1}}, {{"14", "1", 0}, {"22466", "1", 1}}, {}, {}, {}}},
    {10, 1, 3, {{{"85015", "108", 1}, {"143768593", "108", 2}}, {{"66145", "72", 1}, {"105898423", "72", 2}}, {}, {}, {}}},
    {11, 1, 3, {{{"-1625", "108", 0}, {"2887105", "108", 1}}, {{"1715", "72", 0}, {"-2737003", "72", 1}}, {}, {}, {}}},
    {12, 1, 3, {{{"-65", "108", -1}, {"108745", "108", 0}}, {{"-17", "24", -1}, {"28441", "24", 0}}, {}, {}, {}}},
    {13, 1, 3, {{{"1", "2", 0}, {"1447", "2", 1}}, {{"1", "2", 0}, {"1999", "2", 1}}, {}, {}, {}}},
    {14, 1, 14, {{{"120744", "1", 1}, {"201818664", "1", 2}}, {{"159888", "1", 1}, {"267240144", "1", 2}}, {}, {}, {}}},
    {15, 1, 14, {{{"72", "1", 0}, {"120744", "1", 1}}, {{"96", "1", 0}, {"159888", "1", 1}}, {}, {}, {}}},
    {16, 1, 14, {{{"144", "1", 0}}, {{"192", "1", 0}}, {}, {}, {}}},
    {17, 1, 7, {{{"31", "18", 0}, {"116617", "18", 1}}, {{"281", "54", 0}, {"208991", "54", 1}}, {}, {}, {}}},
    {18, 1, 7, {{{"-65", "18", -1}, {"108745", "18", 0}}, {{"-131", "27", -1}, {"219163", "27", 0}}, {}, {}, {}}},
    {19, 1, 0, {{{"3615127", "23328", 1}, {"8142156817", "23328", 2}}, {{"4131265", "11664", 1}, {"2689931479", "11664", 2}}, {}, {}, {}}},
    {20, 1, 0, {{{"-2104505", "23328", 0}, {"3526059745", "23328", 1}}, {{"2807237", "23328", 0}, {"-4680672973", "23328", 1}}, {}, {}, {}}},
    {21, 1, 0, {{{"-7068425", "23328", -1}, {"11814523825", "23328", 0}}, {{"-1196195", "2916", -1}, {"1999380955", "2916", 0}}, {}, {}, {}}},
    {22, 1, 0, {{{"7345", "432", 0}, {"-12119705", "432", 1}}, {{"-6197", "288", 0}, {"10499773", "288", 1}}, {}, {}, {}}},
    {23, 1, 0, {{{"1447", "8", 1}, {"2443777", "8", 2}}, {{"1999", "8", 1}, {"3242521", "8", 2}}, {}, {}, {}}},
    {24, 1, 0, {{{"32805161", "108", 2}, {"54881040239", "108", 3}}, {{"29641217", "72", 2}, {"49498725911", "72", 3}}, {}, {}, {}}},
    {25, 1, 0, {{{"740509100311", "1458", 3}, {"1237818669070513", "1458", 4}}, {{"501401051935", "729", 3}, {"838121265457801", "729", 4}}, {}, {}, {}}},
    {26, 1, 15, {{{"71754261114955960", "81", 4}, {"119933657317951854472", "81", 5}}, {{"291727305240092752", "243", 4}, {"487607592266798252080", "243", 5}}, {}, {}, {}}},
    {27, 1, 8, {{{"84193524123331244303", "1458", 5}, {"140725263328052732114393", "1458", 6}}, {{"171278806193160289301", "2187", 5}, {"286283955528410226595427", "2187", 6}}, {}, {}, {}}},
    {28, 1, 4, {{{"6289683368723", "1944", 3}, {"10512907255001141", "1944", 4}}, {{"6407069939495", "1458", 3}, {"10709134162880129", "1458", 4}}, {}, {}, {}}},
    {29, 1, 0, {{{"464135", "2592", 1}, {"794956577", "2592", 2}}, {{"325541", "1296", 1}, {"524137043", "1296", 2}}, {}, {}, {}}},
    {30, 1, 15, {{{"17072730067", "54", 2}, {"28535661518197", "54", 3}}, {{"3873220609", "9", 2}, {"6473856199063", "9", 3}}, {}, {}, {}}},
    {31, 1, 8, {{{"480751987830295", "23328", 3}, {"803579524335268753", "23328", 4}}, {{"327434508313145", "11664", 3}, {"547329217239002015", "11664", 4}}, {}, {}, {}}},
    {32, 1, 8, {{{"293738136445", "23328", 2}, {"470526609087163", "23328", 3}}, {{"197305889945", "11664", 2}, {"325111894094399", "11664", 3}}, {}, {}, {}}},
    {33, 1, 8, {{{"-4522191905", "23328", 1}, {"8133848923273", "23328", 2}}, {{"4813128245", "11664", 1}, {"-7653084333757", "11664", 2}}, {}, {}, {}}},
    {34, 1, 2, {{{"21179", "54", 1}, {"34964309", "54", 2}}, {{"17753", "27", 1}, {"29330411", "27", 2}}, {}, {}, {}}},
    {35, 1, 17, {{{"2039517464", "3", 2}, {"3408952424936", "3", 3}}, {{"10267634576", "9", 2}, {"17161853188592", "9", 3}}, {}, {}, {}}},
    {36, 1, 13, {{{"38", "1", 0}, {"63818", "1", 1}}, {{"64", "1", 0}, {"106960", "1", 1}}, {}, {}, {}}},
    {37, 1, 6, {{{"538495", "216", 1}, {"892769641", "216", 2}}, {{"37790", "9", 1}, {"62416754", "9", 2}}, {}, {}, {}}},
    {38, 1, 6, {{{"-1355", "216", 0}, {"3337411", "216", 1}}, {{"5", "2", 0}, {"8339", "2", 1}}, {}, {}, {}}},
    {39, 1, 4, {{{"1", "1", 0}}, {{"2", "1", 0}}, {}, {}, {}}},
    {40, 2, 4, {{{"1895", "216", 0}, {"-2436799", "216", 1}}, {}, {}, {{"-1625", "108", 0}, {"2887105", "108", 1}}, {}}},
    {41, 2, 4, {{{"368465", "216", 1}, {"605232455", "216", 2}}, {}, {}, {{"85015", "108", 1}, {"143768593", "108", 2}}, {}}},
    {42, 2, 11, {{{"26", "1", 0}, {"43142", "1", 1}}, {}, {}, {{"12", "1", 0}, {"20676", "1", 1}}, {}}},
    {43, 2, 15, {{{"4149082184", "9", 2}, {"6934995913784", "9", 3}}, {}, {}, {{"1969470208", "9", 2}, {"3291861361024", "9", 3}}, {}}},
    {44, 2, 0, {{{"14327", "54", 1}, {"23696513", "54", 2}}, {}, {}, {{"1142", "9", 1}, {"1877966", "9", 2}}, {}}},
    {45, 2, 0, {{{"1", "8", 0}, {"2551", "8", 1}}, {}, {}, {{"1", "8", 0}, {"343", "8", 1}}, {}}},
    {46, 2, 0, {{{"-11", "54", -1}, {"18403", "54", 0}}, {}, {}, {{"-7", "72", -1}, {"11711", "72", 0}}, {}}},
    {47, 2, 0, {{{"73", "216", 0}, {"-8081", "216", 1}}, {}, {}, {{"-7", "36", 0}, {"20783", "36", 1}}, {}}},
    {48, 2, 7, {{{"8", "1", 0}}, {}, {}, {{"4", "1", 0}}, {}}},
    {49, 2, 7, {{{"4", "1", 0}, {"6616", "1", 1}}, {}, {}, {{"2", "1", 0}, {"3446", "1", 1}}, {}}},
    {50, 2, 3, {{{"1", "1", 0}}, {}, {}, {{"1", "1", 0}}, {}}},
    {51, 3, 5, {{{"1895", "216", 0}, {"-2436799", "216", 1}}, {}, {{"-1625", "108", 0}, {"2887105", "108", 1}}, {{"1895", "216", 0}, {"-2436799", "216", 1}}, {}}},
    {52, 3, 5, {{{"368465", "216", 1}, {"605232455", "216", 2}}, {}, {{"85015", "108", 1}, {"143768593", "108", 2}}, {{"368465", "216", 1}, {"605232455", "216", 2}}, {}}},
    {53, 3, 12, {{{"26", "1", 0}, {"43142", "1", 1}}, {}, {{"12", "1", 0}, {"20676", "1", 1}}, {{"26", "1", 0}, {"43142", "1", 1}}, {}}},
    {54, 3, 16, {{{"4149082184", "9", 2}, {"6934995913784", "9", 3}}, {}, {{"1969470208", "9", 2}, {"3291861361024", "9", 3}}, {{"4149082184", "9", 2}, {"6934995913784", "9", 3}}, {}}},
    {55, 3, 1, {{{"14327", "54", 1}, {"23696513", "54", 2}}, {}, {{"1142", "9", 1}, {"1877966", "9", 2}}, {{"14327", "54", 1}, {"23696513", "54", 2}}, {}}},
    {56, 3, 1, {{{"1", "8", 0}, {"2551", "8", 1}}, {}, {{"1", "8", 0}, {"343", "8", 1}}, {{"1", "8", 0}, {"2551", "8", 1}}, {}}},
    {57, 3, 1, {{{"-11", "54", -1}, {"18403", "54", 0}}, {}, {{"-7", "72", -1}, {"11711", "72", 0}}, {{"-11", "54", -1}, {"18403", "54", 0}}, {}}},
    {58, 3, 1, {{{"73", "216", 0}, {"-8081", "216", 1}}, {}, {{"-7", "36", 0}, {"20783", "36", 1}}, {{"73", "216", 0}, {"-8081", "216", 1}}, {}}},
    {59, 3, 8, {{{"8", "1", 0}}, {}, {{"4", "1", 0}}, {{"8", "1", 0}}, {}}},
    {60, 3, 8, {{{"4", "1", 0}, {"6616", "1", 1}}, {}, {{"2", "1", 0}, {"3446", "1", 1}}, {{"4", "1", 0}, {"6616", "1", 1}}, {}}},
    {61, 3, 4, {{{"1", "1", 0}}, {}, {{"1", "1", 0}}, {{"1", "1", 0}}, {}}},
    {62, 4, 1, {{}, {}, {}, {}, {{"1", "1", 0}}}},
};

bool ZeroPatternOk(int group, const BoundVector& v, const Real& tol) {
  auto zero = [&](int c) { return abs(v[c]) <= tol; };
  switch (group) {
    case 1: return zero(2) && zero(3) && zero(4);
    case 2: return zero(1) && zero(2) && zero(4);
    case 3: return zero(1) && zero(4) && abs(v[0] - v[3]) <= tol;
    case 4: return zero(0) && zero(1) && zero(2) && zero(3);
  }
  return false;
}

std::vector<SetSEntry> BuildSetS() {
  using boost::multiprecision::pow;
  using boost::multiprecision::sqrt;
  const Real alpha = Alpha();
  const Real root_r = sqrt(Real(kLowerBoundRadicand));
  std::vector<SetSEntry> out;
  for (const VectorSpec& spec : kSetS) {
    SetSEntry e{spec.index, spec.group, {}};
    const Real scale = pow(alpha, -spec.alpha_power);
    for (int c = 0; c < 5; ++c) {
      Real sum = 0;
      for (const Term& t : spec.comp[c])
        sum += Real(t.num) / Real(t.den) * pow(root_r, -t.half_power);
      e.v[c] = scale * sum;
    }
    for (int c = 0; c < 5; ++c)
      if (e.v[c] < Real("-1e-12"))
        throw VerificationError("vector " + std::to_string(spec.index) + " has a negative component");
    if (!ZeroPatternOk(spec.group, e.v, Real("1e-30")))
      throw VerificationError("vector " + std::to_string(spec.index) + " breaks the pattern of group " +
                              std::to_string(spec.group));
    out.push_back(e);
  }
  return out;
}

}  // namespace

const std::vector<SetSEntry>& SetSVectors() {
  static const std::vector<SetSEntry> vectors = BuildSetS();
  return vectors;
}

BoundVector BilinearB(const BoundVector& a, const BoundVector& b) {
  const auto& [v1, w1, x1, y1, z1] = a;
  const auto& [v2, w2, x2, y2, z2] = b;
  return {(v1 + w1 + x1 + y1 + z1) * (v2 + w2 + x2 + y2 + z2) - y1 * z2 - z1 * y2,
          (v1 + w1 + x1 + y1) * v2 + v1 * (v2 + w2 + x2 + y2),
          y1 * z2 + z1 * y2,
          v1 * z2 + z1 * v2,
          Real(0)};
}

BoundVector ToBoundVector(const MatchVector& v, const Real& scale) {
  BoundVector out;
  for (int c = 0; c < 5; ++c) out[c] = Real(v[c]) * scale;
  return out;
}

const char* ToString(Membership m) {
  switch (m) {
    case Membership::kMember: return "member";
    case Membership::kNotMember: return "not_member";
    case Membership::kNumericalFailure: return "numerical_failure";
  }
  return "?";
}

MembershipResult ConvMembership(const BoundVector& target, const Real& tol) {
  const auto& set = SetSVectors();
  const int k = static_cast<int>(set.size());
  // Columns: c_1..c_k, t+, t-, s_1..s_5. Rows: sum c v_i - t - s_i = target_i,
  // sum c = 1. Maximise t = t+ - t-.
  const int cols = k + 2 + 5;
  std::vector<std::vector<Real>> a(6, std::vector<Real>(cols, 0));
  std::vector<Real> b(6, 0), obj(cols, 0);
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < k; ++j) a[i][j] = set[j].v[i];
    a[i][k] = -1;
    a[i][k + 1] = 1;
    a[i][k + 2 + i] = -1;
    b[i] = target[i];
  }
  for (int j = 0; j < k; ++j) a[5][j] = 1;
  b[5] = 1;
  obj[k] = 1;
  obj[k + 1] = -1;
  const LpResult lp = SolveStandardForm(a, b, obj);
  MembershipResult out;
  out.lp_status = lp.status;
  if (lp.status != LpStatus::kOptimal) return out;  // the LP is always feasible and bounded
  out.slack = lp.objective;
  out.certificate.assign(lp.x.begin(), lp.x.begin() + k);
  out.status = out.slack >= -tol ? Membership::kMember : Membership::kNotMember;
  return out;
}

Real CertificateResidual(const BoundVector& target, const std::vector<Real>& certificate) {
  const auto& set = SetSVectors();
  Real worst = 0;
  bool first = true;
  for (int i = 0; i < 5; ++i) {
    Real sum = 0;
    for (std::size_t j = 0; j < set.size(); ++j) sum += certificate[j] * set[j].v[i];
    const Real gap = sum - target[i];
    if (first || gap < worst) worst = gap;
    first = false;
  }
  return worst;
}

SetSReport VerifySetS(const Real& tol, int jobs) {
  using boost::multiprecision::abs;
  if (!(tol > 0)) throw DomainError("tolerance must be positive");
  const auto& set = SetSVectors();
  const int k = static_cast<int>(set.size());
  SetSReport report;
  const Real inv_alpha = 1 / Alpha();
  const BoundVector& last = set.back().v;
  report.property1 = abs(last[0]) <= tol && abs(last[1]) <= tol && abs(last[2]) <= tol &&
                     abs(last[3]) <= tol && abs(last[4] - inv_alpha) <= tol;
  report.checks = 1;

  report.pairs.resize(static_cast<std::size_t>(k) * k);
  ParallelChunks(static_cast<std::uint64_t>(k) * k, jobs,
                 [&](int, std::uint64_t begin, std::uint64_t end) {
                   for (std::uint64_t p = begin; p < end; ++p) {
                     const int i = static_cast<int>(p / k), j = static_cast<int>(p % k);
                     const MembershipResult r = ConvMembership(BilinearB(set[i].v, set[j].v), tol);
                     report.pairs[p] = {i + 1, j + 1, r.status, static_cast<double>(r.slack)};
                   }
                 });
  report.checks += static_cast<int>(report.pairs.size());
  bool first = true;
  const double tight = 10 * static_cast<double>(tol);
  for (const PairCheck& c : report.pairs) {
    if (c.status != Membership::kMember) ++report.failures;
    if (c.status != Membership::kNumericalFailure && (first || c.slack < report.worst_slack)) {
      report.worst_slack = c.slack;
      report.worst_i = c.i;
      report.worst_j = c.j;
      first = false;
    }
    if (c.slack < tight) report.tight.push_back(c);
  }
  if (!report.property1) ++report.failures;
  return report;
}

std::vector<std::string> CheckGroupClosure(const Real& tol) {
  using boost::multiprecision::abs;
  const auto& set = SetSVectors();
  std::vector<std::string> violations;
  for (const auto& a : set)
    for (const auto& b : set) {
      const BoundVector r = BilinearB(a.v, b.v);
      auto zero = [&](int c) { return abs(r[c]) <= tol; };
      int other = 0;
      bool ok = true;
      if (a.group != 4 && b.group != 4) {
        ok = zero(2) && zero(3) && zero(4);
      } else if (a.group == 4 && b.group == 4) {
        continue;  // no rule covers the empty-empty combination
      } else {
        other = a.group == 4 ? b.group : a.group;
        if (other == 1) ok = zero(1) && zero(2) && zero(4);
        if (other == 2) ok = zero(1) && zero(4) && abs(r[0] - r[3]) <= tol;
        if (other == 3) ok = zero(1) && zero(4) && abs(r[2] - r[3]) <= tol;
      }
      if (!ok)
        violations.push_back("B(v" + std::to_string(a.index) + ", v" + std::to_string(b.index) + ")");
    }
  return violations;
}

BoundVector ComponentMaxima() {
  BoundVector out{};
  for (const auto& e : SetSVectors())
    for (int c = 0; c < 5; ++c) out[c] = std::max(out[c], e.v[c]);
  return out;
}

}  // namespace convexforest
