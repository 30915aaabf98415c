#include <doctest.h>

#include "coxeter_checks.hpp"
#include "cotwin/coxeter.hpp"
#include "cotwin/errors.hpp"
#include "oracles.hpp"

using namespace cotwin;

namespace {

WeylElt w_of(const WeylTable& t, std::vector<int> letters) { return t.from_word(letters); }

Errc code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::Io;
}

}  // namespace

TEST_CASE("A1 has two elements") {
  const auto t = enumerate_weyl(CoxeterMatrix({"s"}, {{1}}));
  REQUIRE(t.size() == 2);
  CHECK(t.length(WeylElt{0}) == 0);
  CHECK(t.length(WeylElt{1}) == 1);
}

TEST_CASE("A2 length histogram") {
  const auto t = enumerate_weyl(CoxeterMatrix({"s", "t"}, {{1, 3}, {3, 1}}));
  CHECK(t.size() == 6);
  CHECK(t.length_histogram() == std::vector<std::size_t>{1, 2, 2, 1});
}

TEST_CASE("infinite dihedral group hits the cap") {
  const CoxeterMatrix m({"s", "t"}, {{1, 0}, {0, 1}});
  CHECK(code_of([&] { (void)enumerate_weyl(m, 1000); }) == Errc::CapExceeded);
}

TEST_CASE("matrix validation") {
  CHECK(code_of([] { CoxeterMatrix({"s", "t"}, {{1, 7}, {7, 1}}); }) == Errc::UnsupportedEntry);
  CHECK(code_of([] { CoxeterMatrix({"s", "t"}, {{1, 3}, {4, 1}}); }) == Errc::InvalidMatrix);
  CHECK(code_of([] { CoxeterMatrix({"s", "t"}, {{1, 1}, {1, 1}}); }) == Errc::InvalidMatrix);
  CHECK(code_of([] { CoxeterMatrix({"s", "s"}, {{1, 3}, {3, 1}}); }) == Errc::InvalidMatrix);
}

TEST_CASE("A2 multiplication examples") {
  const auto t = enumerate_weyl(CoxeterMatrix({"s", "t"}, {{1, 3}, {3, 1}}));
  const WeylElt s = t.generator(0), st = w_of(t, {0, 1}), sts = w_of(t, {0, 1, 0});
  CHECK(t.gen_mult(t.identity(), 0, Side::Right) == s);
  CHECK(t.gen_mult(sts, 0, Side::Right) == st);
  CHECK(t.gen_mult(st, 1, Side::Right) == s);
  CHECK(sts == w_of(t, {1, 0, 1}));
  CHECK(t.word(sts) == std::vector<int>{0, 1, 0});
  CHECK(format_word(t, sts) == "s.t.s");
}

TEST_CASE("A2 coset representatives and longest elements") {
  const auto t = enumerate_weyl(CoxeterMatrix({"s", "t"}, {{1, 3}, {3, 1}}));
  const GenSet S = 0b11, Jt = 0b10, Js = 0b01;
  const WeylElt s = t.generator(0), tt = t.generator(1), st = w_of(t, {0, 1}), sts = w_of(t, {0, 1, 0});
  CHECK(t.min_coset_rep(t.identity(), S) == t.identity());
  CHECK(t.min_coset_rep(st, Jt) == s);
  CHECK(t.min_coset_rep(sts, S) == t.identity());
  CHECK(t.longest_element(0) == t.identity());
  CHECK(t.longest_element(Js) == s);
  CHECK(t.longest_element(S) == sts);
  CHECK(t.length(t.longest_element(S)) == 3);
  CHECK(t.max_coset_rep(s, Jt) == st);
  CHECK(t.max_coset_rep(t.identity(), S) == sts);
  CHECK(t.max_coset_rep(tt, S) == sts);
}

TEST_CASE("A2 X_s membership and prec") {
  const auto t = enumerate_weyl(CoxeterMatrix({"s", "t"}, {{1, 3}, {3, 1}}));
  CHECK(t.in_X_s(t.identity(), 0) == 0);
  const WeylElt x_J = t.mul(t.generator(0), t.longest_element(0b11));
  CHECK(x_J == w_of(t, {1, 0}));
  CHECK(t.in_X_s(x_J, 0) == 1);
  CHECK_FALSE(t.in_X_s(t.generator(1), 0).has_value());
  for (std::uint32_t i = 0; i < t.size(); ++i) {
    const WeylElt w{i};
    CHECK(t.prec(t.identity(), w));
    CHECK(t.prec(w, w));
    if (t.in_X_s(w, 0)) CHECK(t.prec(w, x_J));
  }
}

TEST_CASE("group orders and length distributions match Poincare polynomials") {
  struct Case {
    const char* type;
    std::vector<int> degrees;
  };
  const std::vector<Case> cases = {
      {"A1", oracle::degrees_A(1)},
      {"A2", oracle::degrees_A(2)},
      {"A3", oracle::degrees_A(3)},
      {"A4", oracle::degrees_A(4)},
      {"B2", oracle::degrees_B(2)},
      {"B3", oracle::degrees_B(3)},
      {"B4", oracle::degrees_B(4)},
      {"H3", {2, 6, 10}},
      {"A1xA1xA1", oracle::join(oracle::join(oracle::degrees_A(1), oracle::degrees_A(1)), oracle::degrees_A(1))},
      {"A1xI2(5)", oracle::join(oracle::degrees_A(1), oracle::degrees_I2(5))},
      {"A1xI2(6)", oracle::join(oracle::degrees_A(1), oracle::degrees_I2(6))},
      {"I2(4)", oracle::degrees_I2(4)},
  };
  for (const auto& c : cases) {
    CAPTURE(c.type);
    const auto t = enumerate_weyl(CoxeterMatrix::of_type(c.type));
    const auto expected = oracle::poincare(c.degrees);
    const auto hist = t.length_histogram();
    REQUIRE(hist.size() == expected.size());
    for (std::size_t i = 0; i < hist.size(); ++i) CHECK(static_cast<std::int64_t>(hist[i]) == expected[i]);
  }
}

TEST_CASE("basic Coxeter identities hold exhaustively") {
  for (const char* type : {"A1", "A2", "B2", "A3", "B3", "H3", "A1xA1xA1", "A1xI2(5)", "A1xI2(6)"}) {
    CAPTURE(type);
    const auto t = enumerate_weyl(CoxeterMatrix::of_type(type));
    CHECK(checks::all_sa41(t) == "");
  }
}

TEST_CASE("sphericity") {
  CHECK(is_k_spherical(CoxeterMatrix::of_type("A3"), 3));
  const CoxeterMatrix affine_a2({"a", "b", "c"}, {{1, 3, 3}, {3, 1, 3}, {3, 3, 1}});
  CHECK(is_k_spherical(affine_a2, 2));
  CHECK_FALSE(is_k_spherical(affine_a2, 3, 5000));
}

TEST_CASE("direct sums keep generator names apart") {
  const CoxeterMatrix a({"s"}, {{1}});
  const CoxeterMatrix b({"t"}, {{1}});
  const auto ab = CoxeterMatrix::direct_sum(a, b);
  CHECK(ab.entry(0, 1) == 2);
  CHECK(code_of([&] { (void)CoxeterMatrix::direct_sum(a, a); }) == Errc::NameClash);
}
