#include "dvlg/serialize.hpp"

#include <algorithm>
#include <stdexcept>

#include "dvlg/error.hpp"
#include "dvlg/parser.hpp"

namespace dvlg::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorKind::PreconditionViolated, what); }

unsigned period_exponent(const Json& j) {
  if (!j.is_object() || !j.contains("k") || !j["k"].is_number_unsigned()) malformed("expected {\"k\": int, ...}");
  return j["k"].get<unsigned>();
}

std::vector<std::size_t> indices(const Json& j) {
  if (!j.is_array()) malformed("expected an index array");
  std::vector<std::size_t> out;
  for (const auto& e : j) {
    if (!e.is_number_unsigned()) malformed("index " + e.dump() + " is not a natural number");
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

}  // namespace

Json to_json(const GroupVector& v) {
  Json out = Json::array();
  for (const auto& q : v.values()) out.push_back(q.str());
  return out;
}

Json to_json(const SubsetL& s) { return s.indices(); }

Json to_json(const periodic::PeriodicFn& f) {
  Json vals = Json::array();
  for (const auto& q : f.vals()) vals.push_back(q.str());
  return {{"k", f.k()}, {"vals", vals}};
}

Json to_json(const periodic::PeriodicSet& c) { return {{"k", c.k()}, {"mask", c.indices()}}; }

Json to_json(const sw::ReductionOutput& r) {
  Json terms = Json::array();
  for (const auto& t : r.terms) terms.push_back(logic::print(t));
  return {{"k", r.k}, {"terms", terms}, {"chi", logic::print(r.chi)}, {"mode", sw::to_string(r.mode)}};
}

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) malformed("expected a rational \"p/q\", got " + j.dump());
  try {
    return Rational::parse(j.get<std::string>());
  } catch (const std::invalid_argument&) {
    malformed("bad rational " + j.dump());
  }
}

GroupVector group_vector_from_json(const Json& j) {
  if (!j.is_array()) malformed("expected an array of rationals");
  std::vector<Rational> vals;
  for (const auto& e : j) vals.push_back(rational_from_json(e));
  return GroupVector(std::move(vals));
}

SubsetL subset_from_json(const Json& j, std::size_t width) {
  const auto idx = indices(j);
  return SubsetL::from_indices(width, std::span<const std::size_t>(idx));
}

periodic::PeriodicFn periodic_fn_from_json(const Json& j) {
  const unsigned k = period_exponent(j);
  if (!j.contains("vals")) malformed("missing \"vals\"");
  const GroupVector v = group_vector_from_json(j["vals"]);
  return periodic::normalize(k, std::vector<Rational>(v.values().begin(), v.values().end()));
}

periodic::PeriodicSet periodic_set_from_json(const Json& j) {
  const unsigned k = period_exponent(j);
  if (!j.contains("mask")) malformed("missing \"mask\"");
  return periodic::PeriodicSet::from_indices(k, indices(j["mask"]));
}

oracle::Assignment assignment_from_json(const Json& j, const logic::Formula& f, std::size_t n) {
  if (!j.is_object()) malformed("environment must be a JSON object");
  oracle::Assignment env;
  const auto vars = logic::free_vars(f);
  for (const auto& [name, value] : j.items()) {
    auto it = std::find_if(vars.begin(), vars.end(), [&](const auto& v) { return v.first == name; });
    if (it == vars.end()) continue;
    if (it->second == logic::Sort::G) {
      GroupVector v = group_vector_from_json(value);
      if (v.size() != n)
        throw Error(ErrorKind::LengthMismatch,
                    name + " has " + std::to_string(v.size()) + " entries, expected " + std::to_string(n));
      env.group_env[name] = std::move(v);
    } else {
      env.lattice_env[name] = subset_from_json(value, n);
    }
  }
  return env;
}

}  // namespace dvlg::io
