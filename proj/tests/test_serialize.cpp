#include "doctest.h"

#include "dvlg/error.hpp"
#include "dvlg/parser.hpp"
#include "dvlg/random.hpp"
#include "dvlg/serialize.hpp"

using namespace dvlg;
using io::Json;

namespace {

bool rejects(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind() == ErrorKind::PreconditionViolated || e.kind() == ErrorKind::BadLength ||
           e.kind() == ErrorKind::LengthMismatch || e.kind() == ErrorKind::WidthMismatch;
  }
  return false;
}

}  // namespace

TEST_CASE("rationals") {
  CHECK(io::rational_from_json(Json(3)) == Rational(3));
  CHECK(io::rational_from_json(Json("-4/6")) == Rational(-2, 3));
  CHECK(rejects([] { io::rational_from_json(Json("1/0")); }));
  CHECK(rejects([] { io::rational_from_json(Json(true)); }));
  CHECK(rejects([] { io::rational_from_json(Json("x")); }));
}

TEST_CASE("round trips") {
  Rng rng(seed_from_env(11), "serialize");
  for (int i = 0; i < 200; ++i) {
    const std::size_t n = 1 + rng.index(5);
    const GroupVector v = rng.vector(n);
    CHECK(io::group_vector_from_json(io::to_json(v)) == v);
    const SubsetL s = rng.subset(n);
    CHECK(io::subset_from_json(io::to_json(s), n) == s);
    const periodic::PeriodicFn f = rng.periodic_fn(3);
    CHECK(io::periodic_fn_from_json(Json::parse(io::to_json(f).dump())) == f);
    const periodic::PeriodicSet c = rng.periodic_set(3);
    CHECK(io::periodic_set_from_json(Json::parse(io::to_json(c).dump())) == c);
  }
}

TEST_CASE("periodic readers normalize") {
  const auto f = io::periodic_fn_from_json(Json::parse(R"({"k": 2, "vals": ["1", "2", "1", "2"]})"));
  CHECK(f.k() == 1);
  CHECK(io::to_json(f) == Json::parse(R"({"k": 1, "vals": ["1", "2"]})"));
  const auto c = io::periodic_set_from_json(Json::parse(R"({"k": 1, "mask": [0, 1]})"));
  CHECK(c.is_full());
}

TEST_CASE("malformed values") {
  CHECK(rejects([] { io::periodic_fn_from_json(Json::parse(R"({"k": 1, "vals": ["1"]})")); }));
  CHECK(rejects([] { io::periodic_fn_from_json(Json::parse(R"({"vals": ["1"]})")); }));
  CHECK(rejects([] { io::periodic_set_from_json(Json::parse(R"({"k": 1, "mask": [2]})")); }));
  CHECK(rejects([] { io::subset_from_json(Json::parse("[3]"), 2); }));
  CHECK(rejects([] { io::subset_from_json(Json::parse("[-1]"), 2); }));
  CHECK(rejects([] { io::group_vector_from_json(Json::parse(R"({"a": 1})")); }));
}

TEST_CASE("assignments follow the sorts of the formula") {
  const auto f = logic::parse("P(a) = l & 0 <= a");
  const auto env = io::assignment_from_json(Json::parse(R"({"a": ["1", "-1/2"], "l": [0]})"), f, 2);
  CHECK(env.group_env.at("a") == GroupVector{Rational(1), Rational(-1, 2)});
  CHECK(env.lattice_env.at("l") == SubsetL(2, 1));
  CHECK(rejects([&] { io::assignment_from_json(Json::parse(R"({"a": ["1"], "l": [0]})"), f, 2); }));
  CHECK(rejects([&] { io::assignment_from_json(Json::parse(R"({"a": [0], "l": ["1", "2"]})"), f, 2); }));
}

TEST_CASE("reduction output") {
  const auto r = sw::reduce(logic::parse("exists a:G. 0 <= a & P(a) = l"), sw::Mode::TPlus);
  const Json j = io::to_json(r);
  CHECK(j["mode"] == "tplus");
  CHECK(j["k"] == r.k);
  CHECK(j["terms"].size() == r.k);
  CHECK(logic::parse(j["chi"].get<std::string>()) == r.chi);
}
