#include "dvlg/corpus.hpp"

#include <fstream>

#include <json.hpp>

#include "dvlg/ba.hpp"
#include "dvlg/error.hpp"
#include "dvlg/parser.hpp"

namespace dvlg::corpus {

namespace {

Entry parse_entry(const nlohmann::json& j) {
  Entry e;
  if (!j.is_object() || !j.contains("formula") || !j["formula"].is_string())
    throw Error(ErrorKind::PreconditionViolated, "entry needs a \"formula\" string");
  e.formula = j["formula"].get<std::string>();
  if (j.contains("expected_ec") && !j["expected_ec"].is_null()) e.expected_ec = j["expected_ec"].get<bool>();
  if (j.contains("expected_finite"))
    for (const auto& [n, v] : j["expected_finite"].items()) e.expected_finite[std::stoul(n)] = v.get<bool>();
  if (j.contains("mode")) e.mode = sw::parse_mode(j["mode"].get<std::string>());
  return e;
}

}  // namespace

std::vector<Entry> load(std::istream& in) {
  std::vector<Entry> out;
  std::string line;
  for (std::size_t no = 1; std::getline(in, line); ++no) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(parse_entry(nlohmann::json::parse(line)));
    } catch (const std::exception& ex) {
      throw Error(ErrorKind::PreconditionViolated, "corpus line " + std::to_string(no) + ": " + ex.what());
    }
  }
  return out;
}

std::vector<Entry> load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::PreconditionViolated, "cannot open " + path);
  return load(in);
}

Outcome check(const Entry& e, const oracle::Limits& limits) {
  Outcome out;
  auto fail = [&](const std::string& why) {
    if (out.pass) out.detail = why;
    out.pass = false;
  };
  try {
    const logic::Formula f = logic::parse(e.formula);
    if (e.expected_ec) {
      out.ec = ba::ba_decide(sw::reduce(f, e.mode).assemble());
      if (*out.ec != *e.expected_ec) fail("ec: got " + std::string(*out.ec ? "true" : "false"));
    }
    for (const auto& [n, want] : e.expected_finite) {
      const bool got = oracle::decide_finite(FinStdStructure(n), f, {}, limits);
      out.finite[n] = got;
      if (got != want) fail("n=" + std::to_string(n) + ": got " + (got ? "true" : "false"));
    }
  } catch (const Error& ex) {
    fail(ex.what());
  }
  return out;
}

}  // namespace dvlg::corpus
