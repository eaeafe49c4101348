#include <cmath>

#include "harmonet/averaging.hpp"
#include "harmonet/errors.hpp"

namespace harmonet {

namespace {

constexpr double kEq = 1e-12;

bool less(double a, double b) { return a < b - kEq * (1.0 + std::abs(b)); }
bool equal(double a, double b) { return std::abs(a - b) <= kEq * (1.0 + std::abs(b)); }
bool less_eq(double a, double b) { return less(a, b) || equal(a, b); }

CriterionResult undetermined(std::string id, std::string property, std::string relation, std::string missing) {
  CriterionResult r;
  r.id = std::move(id);
  r.property = std::move(property);
  r.relation = std::move(relation);
  r.status = CriterionStatus::Undetermined;
  r.note = "missing " + missing;
  return r;
}

CriterionResult decided(std::string id, std::string property, std::string relation, double lhs, double rhs, bool ok) {
  CriterionResult r;
  r.id = std::move(id);
  r.property = std::move(property);
  r.relation = std::move(relation);
  r.lhs = lhs;
  r.rhs = rhs;
  r.status = ok ? CriterionStatus::Certified : CriterionStatus::NotCertified;
  return r;
}

std::string missing_list(std::initializer_list<std::pair<const char*, bool>> fields) {
  std::string out;
  for (const auto& [name, present] : fields) {
    if (present) continue;
    if (!out.empty()) out += ", ";
    out += name;
  }
  return out;
}

}  // namespace

const char* to_string(CriterionStatus s) {
  switch (s) {
    case CriterionStatus::Certified: return "certified";
    case CriterionStatus::NotCertified: return "not certified";
    case CriterionStatus::Undetermined: return "undetermined";
  }
  return "undetermined";
}

const CriterionResult& CriteriaReport::get(const std::string& id) const {
  for (const auto& r : items) {
    if (r.id == id) return r;
  }
  throw Error(ErrorCode::MissingField, "no criterion " + id);
}

bool CriteriaReport::certifies(const std::string& property) const {
  for (const auto& r : items) {
    if (r.status == CriterionStatus::Certified && (r.property == property || r.property.find(property + "+") == 0 || r.property.find("+" + property) != std::string::npos)) return true;
  }
  return false;
}

CriteriaReport criteria_evaluate(const CriteriaInput& in) {
  if (in.n < 2) throw Error(ErrorCode::InvalidConfig, "n must be at least 2");
  if (in.r2 && *in.r2 <= 0.0) throw Error(ErrorCode::InvalidConfig, "r2 must be positive");
  if (in.beta && in.gamma && *in.beta > *in.gamma) throw Error(ErrorCode::InvalidConfig, "beta exceeds gamma");
  if (in.p < 1) throw Error(ErrorCode::InvalidConfig, "p must be a positive integer");
  const double n = in.n;
  const std::string pprop = in.p == 1 ? "N1" : (in.p == 2 ? "N2" : "N" + std::to_string(in.p));
  CriteriaReport rep;

  {
    const char* rel = "ric_const > (n/r2 - beta)/2";
    if (in.ric_const && in.r2 && in.beta) {
      double rhs = 0.5 * (n / *in.r2 - *in.beta);
      rep.items.push_back(decided("N1_a", "N1", rel, *in.ric_const, rhs, less(rhs, *in.ric_const)));
    } else {
      rep.items.push_back(undetermined(
          "N1_a", "N1", rel,
          missing_list({{"ric_const", bool(in.ric_const)}, {"r2", bool(in.r2)}, {"beta", bool(in.beta)}})));
    }
  }
  {
    const char* rel = "lambda1 < n/(n-1) (2 ric_const + beta_tilde)";
    if (in.lambda1 && in.ric_const) {
      double bt = in.beta ? *in.beta - *in.lambda1 / n : 0.0;
      double rhs = n / (n - 1.0) * (2.0 * *in.ric_const + bt);
      auto r = decided("N1_a_prime", "N1", rel, *in.lambda1, rhs, less(*in.lambda1, rhs));
      r.note = in.beta ? "beta_tilde = beta - lambda1/n" : "beta_tilde >= 0 used as a bound";
      rep.items.push_back(r);
    } else {
      rep.items.push_back(undetermined("N1_a_prime", "N1", rel,
                                       missing_list({{"lambda1", bool(in.lambda1)}, {"ric_const", bool(in.ric_const)}})));
    }
  }
  {
    const char* rel = "ric_const = (n-1)/(2 r2) and rank >= 2";
    if (in.ric_const && in.r2 && in.rank) {
      double rhs = (n - 1.0) / (2.0 * *in.r2);
      auto r = decided("N1_b", "N1", rel, *in.ric_const, rhs, equal(*in.ric_const, rhs) && *in.rank >= 2);
      r.basis = "by-rank";
      rep.items.push_back(r);
    } else {
      rep.items.push_back(undetermined(
          "N1_b", "N1", rel,
          missing_list({{"ric_const", bool(in.ric_const)}, {"r2", bool(in.r2)}, {"rank", bool(in.rank)}})));
    }
  }
  {
    const char* rel = "lambda1 = 2 ric_const n/(n-1) and rank >= 2";
    if (in.lambda1 && in.ric_const && in.rank) {
      double rhs = 2.0 * *in.ric_const * n / (n - 1.0);
      auto r = decided("N1_b_prime", "N1", rel, *in.lambda1, rhs, equal(*in.lambda1, rhs) && *in.rank >= 2);
      r.basis = "by-rank";
      rep.items.push_back(r);
    } else {
      rep.items.push_back(undetermined(
          "N1_b_prime", "N1", rel,
          missing_list({{"lambda1", bool(in.lambda1)}, {"ric_const", bool(in.ric_const)}, {"rank", bool(in.rank)}})));
    }
  }
  {
    const char* rel = "n/r2 - 2 ric_const < -(p-2) gamma";
    if (in.r2 && in.ric_const && (in.gamma || in.p == 2)) {
      double lhs = n / *in.r2 - 2.0 * *in.ric_const;
      double rhs = in.p == 2 ? 0.0 : -(in.p - 2) * *in.gamma;
      rep.items.push_back(decided("Np", pprop, rel, lhs, rhs, less(lhs, rhs)));
    } else {
      rep.items.push_back(undetermined(
          "Np", pprop, rel,
          missing_list({{"r2", bool(in.r2)}, {"ric_const", bool(in.ric_const)}, {"gamma", bool(in.gamma)}})));
    }
  }
  {
    const char* rel = "ric_const >= n/(2 r2)";
    if (in.ric_const && in.r2) {
      double rhs = n / (2.0 * *in.r2);
      rep.items.push_back(decided("N2_ric", "N2", rel, *in.ric_const, rhs, less_eq(rhs, *in.ric_const)));
    } else {
      rep.items.push_back(
          undetermined("N2_ric", "N2", rel, missing_list({{"ric_const", bool(in.ric_const)}, {"r2", bool(in.r2)}})));
    }
  }
  {
    const char* rel = "lambda1 <= 2 ric_const";
    if (in.lambda1 && in.ric_const) {
      double rhs = 2.0 * *in.ric_const;
      rep.items.push_back(decided("N2_lambda", "N2", rel, *in.lambda1, rhs, less_eq(*in.lambda1, rhs)));
    } else {
      rep.items.push_back(undetermined("N2_lambda", "N2", rel,
                                       missing_list({{"lambda1", bool(in.lambda1)}, {"ric_const", bool(in.ric_const)}})));
    }
  }
  {
    const char* rel = "lambda1 < 2 ric_const";
    if (in.lambda1 && in.ric_const) {
      double rhs = 2.0 * *in.ric_const;
      auto r = decided("strongly_unstable", "N1+N2", rel, *in.lambda1, rhs, less(*in.lambda1, rhs));
      rep.items.push_back(r);
    } else {
      rep.items.push_back(undetermined("strongly_unstable", "N1+N2", rel,
                                       missing_list({{"lambda1", bool(in.lambda1)}, {"ric_const", bool(in.ric_const)}})));
    }
  }
  {
    const char* rel = "rank >= 2 and lambda1 <= 2 ric_const n/(n-1)";
    if (in.lambda1 && in.ric_const && in.rank) {
      double rhs = 2.0 * *in.ric_const * n / (n - 1.0);
      auto r = decided("rank_lambda", "N1", rel, *in.lambda1, rhs, *in.rank >= 2 && less_eq(*in.lambda1, rhs));
      r.basis = "by-rank";
      rep.items.push_back(r);
    } else {
      rep.items.push_back(undetermined(
          "rank_lambda", "N1", rel,
          missing_list({{"lambda1", bool(in.lambda1)}, {"ric_const", bool(in.ric_const)}, {"rank", bool(in.rank)}})));
    }
  }
  return rep;
}

}  // namespace harmonet
