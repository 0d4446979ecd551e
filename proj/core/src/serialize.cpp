#include <numeric>

#include <json.hpp>

#include "curtis/errors.hpp"
#include "curtis/serialize.hpp"

namespace curtis {

namespace {

using nlohmann::json;

json coeff_json(const Cyclotomic& c) {
  json num = json::array();
  for (const auto& a : c.numerator()) num.push_back(a.get_str());
  return json{{"E", c.conductor()}, {"num", num}, {"den", c.denominator().get_str()}, {"text", c.to_string()}};
}

Cyclotomic coeff_from(const json& j) {
  std::vector<mpz_class> num;
  for (const auto& a : j.at("num")) num.emplace_back(a.get<std::string>());
  return Cyclotomic::from_coeffs(j.at("E").get<std::int64_t>(), std::move(num), mpz_class(j.at("den").get<std::string>()));
}

Partition parse_partition(const std::string& s) {
  Partition nu;
  std::string cur;
  for (char ch : s) {
    if (ch >= '0' && ch <= '9') {
      cur += ch;
    } else if (!cur.empty()) {
      nu.push_back(std::stoi(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) nu.push_back(std::stoi(cur));
  return nu;
}

void check_header(const json& j, const std::string& kind) {
  if (!j.contains("schema_version") || j.at("schema_version").get<int>() != kSchemaVersion) {
    throw DomainError("json: unsupported schema_version");
  }
  if (j.value("kind", "") != kind) throw DomainError("json: expected kind " + kind);
}

}  // namespace

std::string tuple_to_json(const CoherentTuple& t, int indent) {
  std::int64_t E = 1;
  json comps = json::object();
  for (const auto& [nu, x] : t.components()) {
    json terms = json::array();
    for (const auto& [m, c] : x.terms()) {
      E = std::lcm(E, c.conductor());
      terms.push_back(json{{"Q", m.qexp}, {"zeta", m.texp}, {"coeff", coeff_json(c)}});
    }
    comps[partition_string(nu)] = terms;
  }
  const TameParams& p = t.params();
  json torsion = json::object();
  for (int d = 1; d <= t.n(); ++d) torsion[std::to_string(d)] = p.torsion_order(d);
  json conv{{"mode", t.mode().name()},
            {"rectifier", t.mode().mode == Mode::rectified ? "(-1)^(d-1) per degree-d factor" : "none"},
            {"ell", p.ell()},
            {"q", p.q()},
            {"n_max", p.n_max()},
            {"L", p.L()},
            {"torsion_order", torsion},
            {"evaluation", "prod Q_i^a_i zeta_i^t_i at (C, alpha) is prod alpha_i^a_i zeta_L^(C_i t_i)"},
            {"frobenius", "geometric; Fr sigma Fr^-1 = sigma^q"},
            {"conductor", E}};
  json out{{"schema_version", kSchemaVersion}, {"kind", "coherent_tuple"}, {"n", t.n()}, {"convention", conv},
           {"components", comps}};
  return out.dump(indent);
}

CoherentTuple tuple_from_json(const std::string& text) {
  const json j = json::parse(text);
  check_header(j, "coherent_tuple");
  const json& conv = j.at("convention");
  const int n = j.at("n").get<int>();
  auto p = std::make_shared<const TameParams>(conv.at("ell").get<std::int64_t>(), conv.at("q").get<std::int64_t>(),
                                              conv.at("n_max").get<int>());
  CoherentTuple t(p, n, ModeConfig::parse(conv.at("mode").get<std::string>()));
  for (const auto& [key, terms] : j.at("components").items()) {
    TorusRingElem& x = t.at(parse_partition(key));
    for (const auto& term : terms) {
      Monomial m{term.at("Q").get<std::vector<int>>(), term.at("zeta").get<std::vector<std::int64_t>>()};
      x.add_term(std::move(m), coeff_from(term.at("coeff")));
    }
  }
  return t;
}

std::string finite_tuple_to_json(const FiniteCoherentTuple& t, int indent) {
  json comps = json::object();
  for (const auto& [nu, x] : t.components()) {
    json terms = json::array();
    for (const auto& [g, c] : x.terms()) terms.push_back(json{{"g", g}, {"coeff", coeff_json(c)}});
    comps[partition_string(nu)] = terms;
  }
  json conv{{"q", t.q()},
            {"group", "T_nu(F_q) = prod F_(q^nu_i)^x, g = exponents of fixed generators"},
            {"character", "t maps generator i to zeta_(q^nu_i - 1)^t_i"}};
  json out{{"schema_version", kSchemaVersion}, {"kind", "finite_tuple"}, {"n", t.n()}, {"convention", conv},
           {"components", comps}};
  return out.dump(indent);
}

FiniteCoherentTuple finite_tuple_from_json(const std::string& text) {
  const json j = json::parse(text);
  check_header(j, "finite_tuple");
  FiniteCoherentTuple t(j.at("convention").at("q").get<std::int64_t>(), j.at("n").get<int>());
  for (const auto& [key, terms] : j.at("components").items()) {
    FiniteTorusAlgElem& x = t.at(parse_partition(key));
    for (const auto& term : terms) x.add_term(term.at("g").get<std::vector<std::int64_t>>(), coeff_from(term.at("coeff")));
  }
  return t;
}

}  // namespace curtis
