#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "oc/enumerate.hpp"
#include "oc/normal_form.hpp"
#include "oc/surface_type.hpp"
#include "oc/term.hpp"
#include "oc/text_io.hpp"

using namespace oc;

namespace {

Term expr(const std::string& text) { return parse_term(text); }

}  // namespace

TEST_CASE("form classification") {
  CHECK(classify_form(expr("eo()")) == NormalForm::Form1);
  CHECK(classify_form(expr("mo(x1o,x2o)")) == NormalForm::Form1);
  CHECK(classify_form(expr("o2c(eo())")) == NormalForm::Form2);
  CHECK(classify_form(expr("ec()")) == NormalForm::Form2);
  CHECK(classify_form(expr("mc(x1c,ec())")) == NormalForm::Form2);
  CHECK(classify_form(expr("mo(c2o(x1c),x2o)")) == NormalForm::Form3);
  CHECK(classify_form(expr("bv(x1c)")) == NormalForm::NotNormal);
  CHECK(classify_form(expr("mo(c2o(x1c),c2o(x2c))")) == NormalForm::NotNormal);
  // A zipper feeding green from red is not part of any canonical shape.
  CHECK(classify_form(expr("o2c(c2o(x1c))")) == NormalForm::NotNormal);
}

TEST_CASE("single-circle builder") {
  Term mo = build_form1({in_label(1), in_label(2), out_label(1)}, out_label(1));
  CHECK(canonical_encode(mo) == "!1o:mo[1i,2i,@]");

  Term strip = build_form1({in_label(1), out_label(1)}, out_label(1));
  CHECK(print_type(type_of(strip)) == "(1i,1o)");
  CHECK(classify_form(strip) == NormalForm::Form1);

  Term jagged = build_form1(
      {in_label(1), out_label(2), in_label(2), out_label(1)}, out_label(1));
  CHECK(print_type(type_of(jagged)) == "(1i,2o,2i,1o)");
  CHECK(classify_form(jagged) == NormalForm::Form1);
  CHECK(degree(jagged) == 0);

  // The root can sit anywhere on the cycle.
  Term other_root = build_form1(
      {in_label(1), out_label(2), in_label(2), out_label(1)}, out_label(2));
  CHECK(type_of(other_root) == type_of(jagged));

  CHECK_THROWS_AS(build_form1({in_label(1), out_label(1)}, out_label(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(build_form1({in_label(1), out_label(1)}, in_label(1)),
                  std::invalid_argument);
}

TEST_CASE("canonical representatives of named components") {
  CHECK(canonical_encode(build_normal_form(parse_type("{1o},()"))) ==
        "!1o:o2c[>eo[@],@]");
  CHECK(canonical_encode(build_normal_form(parse_type("(1i,2i,1o)"))) ==
        "!1o:mo[1i,2i,@]");
  CHECK(canonical_encode(build_normal_form(parse_type("{1o}"))) == "!1o:ec[@]");
  CHECK(canonical_encode(build_normal_form(parse_type("{1i,1o}"))) ==
        "!1o:mc[1i,>ec[@],@]");

  Term mixed = build_normal_form(parse_type("{1i,1o},(2i)"));
  CHECK(classify_form(mixed) == NormalForm::Form2);
  CHECK(print_type(type_of(mixed)) == "{1i,1o},(2i)");

  Term open_root = build_normal_form(parse_type("{1i},(1o)"));
  CHECK(classify_form(open_root) == NormalForm::Form3);
  CHECK(print_type(type_of(open_root)) == "{1i},(1o)");

  Term big = build_normal_form(
      parse_type("{1i,4i,3o},(2i,1o),(3i,2o,5i),()"));
  CHECK(classify_form(big) == NormalForm::Form2);
  CHECK(print_type(type_of(big)) == "{1i,4i,3o},(2i,1o),(3i,2o,5i),()");
  CHECK(degree(big) == 0);

  SurfaceType no_out;
  no_out.closed = {in_label(1)};
  CHECK_THROWS_AS(build_normal_form(no_out), std::invalid_argument);
}

TEST_CASE("representative choice depends only on the component") {
  // Same type reached along different composition routes.
  Term left = expr("mo(mo(x1o,x2o),x3o)");
  Term right = expr("mo(x1o,mo(x2o,x3o))");
  CHECK_FALSE(equal_terms(left, right));
  CHECK(equal_terms(normalize0(left), normalize0(right)));

  Term a = expr("mc(x1c,x2c)");
  Term b = expr("mc(x2c,x1c)");
  CHECK(equal_terms(normalize0(a), normalize0(b)));

  Term t = expr("mc(mc(x1c,ec()),ec())");
  CHECK(equal_terms(normalize0(t), normalize0(normalize0(t))));

  CHECK_THROWS_AS(normalize0(expr("bv(x1c)")), std::invalid_argument);
}

TEST_CASE("degree-zero equivalence is type equality") {
  CHECK(equiv0(expr("o2c(mo(x1o,x2o))"), expr("o2c(mo(x2o,x1o))")));
  CHECK_FALSE(equiv0(expr("mo(x1o,x2o)"), expr("mo(x2o,x1o)")));
  Term t = expr("mc(mc(x1c,ec()),ec())");
  CHECK(equiv0(t, normalize0(t)));
}

TEST_CASE("decision procedure on all small trees") {
  // Over every degree-0 tree with up to 3 vertices, the canonical
  // representative is a complete invariant of the component.
  std::map<std::string, std::string> nf_of_type;
  std::map<std::string, std::string> type_of_nf;
  for (const Term& t : enumerate_terms_by_size(3, 0)) {
    SurfaceType s = type_of(t);
    std::string ts = print_type(s);
    std::string nf = canonical_encode(normalize0(t));
    auto [it, fresh] = nf_of_type.emplace(ts, nf);
    CHECK(it->second == nf);
    auto [jt, fresh2] = type_of_nf.emplace(nf, ts);
    CHECK(jt->second == ts);
  }
  CHECK(nf_of_type.size() == type_of_nf.size());
  CHECK(nf_of_type.size() > 50);
}

TEST_CASE("every component has a well-typed representative") {
  for (int ci = 0; ci <= 3; ++ci)
    for (int oi = 0; ci + oi <= 3; ++oi)
      for (int co = 0; ci + oi + co <= 3; ++co)
        for (int oo = 0; ci + oi + co + oo <= 3; ++oo) {
          if (co + oo == 0) continue;
          for (const SurfaceType& s : enumerate_types(ci, oi, co, oo, 2)) {
            Term t = build_normal_form(s);
            CHECK(type_of(t) == s);
            CHECK(degree(t) == 0);
            CHECK(classify_form(t) != NormalForm::NotNormal);
          }
        }
}

TEST_CASE("spanning candidates per degree") {
  SurfaceType pair = parse_type("{1i,2i,1o}");
  CHECK(enumerate_normal_candidates(pair, 0, 8).size() == 1);
  CHECK(enumerate_normal_candidates(pair, 1, 8).size() == 3);
  CHECK(enumerate_normal_candidates(pair, 2, 8).size() == 3);
  CHECK(enumerate_normal_candidates(pair, 3, 8).size() == 1);
  CHECK(enumerate_normal_candidates(pair, 4, 8).empty());

  SurfaceType cyl = parse_type("{1i,1o}");
  auto d1 = enumerate_normal_candidates(cyl, 1, 6);
  REQUIRE(d1.size() == 1);
  CHECK(canonical_encode(d1[0]) == "!1o:bv[1i,@]");

  SurfaceType cap = parse_type("{1o},()");
  auto c1 = enumerate_normal_candidates(cap, 1, 6);
  REQUIRE(c1.size() == 1);
  CHECK(canonical_encode(c1[0]) == "!1o:bv[>o2c[>eo[@],@],@]");

  // Candidates really live in the requested slice.
  for (const SurfaceType& s :
       {parse_type("{1i,1o},(2i)"), parse_type("{1i,2i,1o}")})
    for (int d = 0; d <= 3; ++d)
      for (const Term& t : enumerate_normal_candidates(s, d, 8)) {
        CHECK(type_of(t) == s);
        CHECK(degree(t) == d);
      }

  // The vertex budget drops candidates that grew too large.
  CHECK(enumerate_normal_candidates(pair, 3, 3).empty());
}
