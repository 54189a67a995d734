#include "doctest.h"

#include <sstream>

#include "dvlg/corpus.hpp"
#include "dvlg/error.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/periodic_logic.hpp"

using namespace dvlg;

namespace {

std::string path(const char* name) { return std::string(DVLG_CORPUS_DIR) + "/" + name; }

}  // namespace

TEST_CASE("corpus lines parse") {
  std::istringstream in(
      "{\"formula\": \"top = bot\", \"expected_ec\": false, \"expected_finite\": {\"1\": false}, \"mode\": \"ec\"}\n"
      "\n"
      "{\"formula\": \"exists a:G. 0 <= a\", \"mode\": \"tplus\"}\n");
  auto entries = corpus::load(in);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].expected_ec == false);
  CHECK(entries[0].expected_finite.at(1) == false);
  CHECK(entries[1].mode == sw::Mode::TPlus);
  CHECK_FALSE(entries[1].expected_ec.has_value());

  std::istringstream bad("{\"formula\": 3}\n");
  CHECK_THROWS_AS(corpus::load(bad), Error);
  std::istringstream junk("not json\n");
  CHECK_THROWS_AS(corpus::load(junk), Error);
}

TEST_CASE("known-answer corpus") {
  const auto entries = corpus::load_file(path("known.jsonl"));
  CHECK(entries.size() == 9);
  for (const auto& e : entries) {
    CAPTURE(e.formula);
    const auto r = corpus::check(e);
    CHECK_MESSAGE(r.pass, r.detail);
  }
}

TEST_CASE("existential corpus") {
  const auto entries = corpus::load_file(path("existential.jsonl"));
  CHECK(entries.size() >= 50);
  periodic::WitnessOptions options;
  options.exact_columns = true;
  for (const auto& e : entries) {
    CAPTURE(e.formula);
    const auto r = corpus::check(e);
    CHECK_MESSAGE(r.pass, r.detail);
    const auto w = periodic::find_witness(logic::parse(e.formula), options);
    CHECK(w.has_value() == e.expected_ec.value());
  }
}

TEST_CASE("a wrong annotation is reported") {
  corpus::Entry e{"top = bot", true, {{1, true}}, sw::Mode::EC};
  const auto r = corpus::check(e);
  CHECK_FALSE(r.pass);
  CHECK(r.ec == false);
  CHECK(r.finite.at(1) == false);
  corpus::Entry broken{"exists x:G. x <=", false, {}, sw::Mode::EC};
  CHECK_FALSE(corpus::check(broken).pass);
}
