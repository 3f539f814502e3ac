#pragma once

// JSON encodings used by every report. Rationals are "p/q" strings and
// polynomials are lists of [[exp_num, exp_den], "coef"] sorted by exponent.

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

#include "snc/snc.hpp"

namespace snc::cli {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rat& r) { return r.to_string(); }

inline Json to_json(const GradedPoly& p) {
  Json out = Json::array();
  for (const auto& [e, c] : p.terms()) {
    const Rat exp(e, p.grain());
    out.push_back(Json::array({Json::array({exp.numerator().get_si(), exp.denominator().get_si()}), c.to_string()}));
  }
  return out;
}

inline Json to_json(const RatFunc& f) {
  return Json{{"numerator", to_json(f.num())}, {"denominator", to_json(f.den())}, {"text", f.to_string("t")}};
}

inline Json to_json(const MotClass& cls) { return to_json(cls.poincare()); }

inline Json subset_json(Subset mask, const std::vector<std::string>& labels) {
  Json out = Json::array();
  for (int j : subset_indices(mask)) out.push_back(labels[static_cast<std::size_t>(j)]);
  return out;
}

inline Json to_json(const SncPair& pair) {
  std::vector<std::string> labels;
  Json divisors = Json::array();
  for (const auto& div : pair.divisors()) {
    labels.push_back(div.label);
    divisors.push_back(Json{{"label", div.label}, {"mult", div.mult}});
  }
  Json strata = Json::array();
  for (const auto& [mask, cls] : pair.strata())
    strata.push_back(Json{{"subset", subset_json(mask, labels)}, {"poincare", to_json(cls)}});
  Json out{{"n", pair.n()}, {"d", pair.d()}, {"d_canonical", pair.d_canonical()}, {"divisors", divisors},
           {"strata", strata}};
  if (pair.model()) out["model_coordinates"] = pair.model()->coordinate;
  return out;
}

inline Json to_json(const DiscrepancyData& disc) {
  Json divisors = Json::array();
  for (std::size_t j = 0; j < disc.discrepancies().size(); ++j)
    divisors.push_back(Json{{"label", disc.labels()[j]}, {"a", to_json(disc.discrepancies()[j])}});
  Json strata = Json::array();
  for (const auto& [mask, cls] : disc.strata())
    strata.push_back(Json{{"subset", subset_json(mask, disc.labels())}, {"poincare", to_json(cls)}});
  return Json{{"n", disc.n()}, {"divisors", divisors}, {"strata", strata}};
}

inline Json to_json(const InvariantVector& v) {
  return Json{{"chi", to_json(v.chi)}, {"chi_prime", to_json(v.chi_prime)},
              {"chi_double_prime", to_json(v.chi_double_prime)}, {"weighted_poincare", to_json(v.poincare)}};
}

inline Json to_json(const TauExpr& e) {
  Json terms = Json::array();
  for (const auto& [atom, c] : e.coefficients()) terms.push_back(Json{{"atom", atom.to_string()}, {"coef", to_json(c)}});
  return Json{{"terms", terms}, {"constant", to_json(e.constant())}, {"text", e.to_string()}};
}

inline Json to_json(const StringyReport& s) {
  Json out{{"polynomial", s.is_polynomial()}, {"realization", to_json(s.realization)}};
  if (s.is_polynomial()) {
    out["stringy_poincare"] = to_json(*s.stringy_poincare);
    out["chi"] = to_json(*s.chi);
    out["chi_prime"] = to_json(*s.chi_prime);
    out["chi_double_prime"] = to_json(*s.chi_double_prime);
  }
  return out;
}

inline Json to_json(const CovCertificate& c) {
  return Json{{"equal", c.equal}, {"lhs", to_json(c.lhs)}, {"rhs", to_json(c.rhs)}};
}

inline Json to_json(const TauCertificate& c) { return Json{{"ok", c.ok}, {"residual", to_json(c.residual)}}; }

inline Json det_line_json(const SncPair& pair, const std::vector<DetLineExponent>& exps) {
  std::vector<std::string> labels;
  for (const auto& div : pair.divisors()) labels.push_back(div.label);
  Json out = Json::array();
  for (const auto& e : exps)
    out.push_back(Json{{"stratum", subset_json(e.stratum, labels)},
                       {"lambda_exp", to_json(e.lambda_exp)},
                       {"eta_exp", to_json(e.eta_exp)},
                       {"lambda_from_limit", to_json(e.lambda_from_limit)},
                       {"eta_from_derivative", to_json(e.eta_from_derivative)},
                       {"consistent", e.consistent()}});
  return out;
}

}  // namespace snc::cli
