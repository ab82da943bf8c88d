#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "oc/surface_type.hpp"
#include "oc/text_io.hpp"

using namespace oc;

namespace {

int count_with_boundaries(const std::vector<SurfaceType>& ts, int nonempty,
                          int empty) {
  int n = 0;
  for (const auto& s : ts) {
    int e = count_empty_boundaries(s);
    int ne = static_cast<int>(s.boundaries.size()) - e;
    if (ne == nonempty && e == empty) ++n;
  }
  return n;
}

}  // namespace

TEST_CASE("label ordering and printing") {
  CHECK(in_label(1) < in_label(2));
  CHECK(in_label(9) < out_label(1));
  CHECK(out_label(1) < out_label(2));
  CHECK(to_string(in_label(1)) == "1i");
  CHECK(to_string(out_label(12)) == "12o");
}

TEST_CASE("type literals round-trip through parse and print") {
  for (const std::string text : {
           "{1i,2i,1o}",
           "(1i,2i,1o)",
           "{1i},(1o)",
           "{1o},(1i)",
           "{1i,1o},()",
           "(1i,2o,2i,1o)",
           "{1i,1o},(2i,2o)",
           "{1i,4i,3o},(2i,1o),(3i,2o,5i),()",
       }) {
    CAPTURE(text);
    CHECK(print_type(parse_type(text)) == text);
  }
}

TEST_CASE("parsing canonicalizes rotations and boundary order") {
  CHECK(print_type(parse_type("(2i,1o,1i)")) == "(1i,2i,1o)");
  CHECK(print_type(parse_type("{1i},(),(1o)")) == "{1i},(1o),()");
  CHECK(print_type(parse_type("{2i,1i,1o}")) == "{1i,2i,1o}");
  // Rotation puts the least label first, it does not sort the cycle.
  CHECK(print_type(parse_type("(2i,1i,1o)")) == "(1i,1o,2i)");
}

TEST_CASE("canonicalized is idempotent") {
  for (const std::string text :
       {"{1i,2i,1o}", "(1i,2o,2i,1o)", "{1i,1o},(2i),()"}) {
    SurfaceType s = parse_type(text);
    CHECK(canonicalized(s) == s);
  }
}

TEST_CASE("validate rejects malformed types") {
  SurfaceType dup;
  dup.closed = {in_label(1), in_label(1), out_label(1)};
  CHECK_THROWS_AS(validate(dup), std::invalid_argument);

  SurfaceType gap;
  gap.closed = {in_label(1), in_label(3), out_label(1)};
  CHECK_THROWS_AS(validate(gap), std::invalid_argument);

  SurfaceType no_out;
  no_out.closed = {in_label(1)};
  CHECK_THROWS_AS(validate(no_out), std::invalid_argument);
  CHECK_NOTHROW(validate(no_out, /*allow_no_output=*/true));

  CHECK_THROWS_AS(parse_type("{1i,1i,1o}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("{1i,3i,1o}"), std::invalid_argument);
  CHECK_THROWS_AS(parse_type("oops"), std::invalid_argument);
}

TEST_CASE("counting helpers") {
  SurfaceType s = parse_type("{1i,4i,3o},(2i,1o),(3i,2o,5i),()");
  CHECK(count_inputs(s) == 5);
  CHECK(count_outputs(s) == 3);
  CHECK(count_empty_boundaries(s) == 1);
  CHECK(count_punctures(s, Polarity::In, Color::Closed) == 2);
  CHECK(count_punctures(s, Polarity::In, Color::Open) == 3);
  CHECK(count_punctures(s, Polarity::Out, Color::Closed) == 1);
  CHECK(count_punctures(s, Polarity::Out, Color::Open) == 2);
}

TEST_CASE("label lookups") {
  SurfaceType s = parse_type("{1i,4i,3o},(2i,1o),(3i,2o,5i),()");
  CHECK(color_of(s, in_label(1)) == Color::Closed);
  CHECK(color_of(s, in_label(2)) == Color::Open);
  CHECK(color_of(s, out_label(2)) == Color::Open);
  CHECK_THROWS_AS(color_of(s, in_label(9)), std::invalid_argument);
  CHECK(has_label(s, out_label(3)));
  CHECK_FALSE(has_label(s, out_label(4)));
  CHECK_FALSE(boundary_of(s, in_label(1)).has_value());
  REQUIRE(boundary_of(s, in_label(2)).has_value());
  CHECK(*boundary_of(s, in_label(2)) == *boundary_of(s, out_label(1)));
  CHECK(*boundary_of(s, in_label(2)) != *boundary_of(s, in_label(3)));
}

TEST_CASE("closed sewing renumbers by the splice convention") {
  SurfaceType mc = parse_type("{1i,2i,1o}");
  CHECK(print_type(sew_closed(mc, 1, mc, 2)) == "{1i,2i,3i,1o}");
  CHECK(print_type(sew_closed(mc, 1, mc, 1)) == "{1i,2i,3i,1o}");
  SurfaceType cc = parse_type("{1i,1o,2o}");
  // Plugging a product into a coproduct keeps both extra ports.
  CHECK(print_type(sew_closed(mc, 1, cc, 1)) == "{1i,2i,1o,2o}");
  // Receiver's outputs slot in after the provider's earlier ones.
  CHECK(print_type(sew_closed(cc, 2, mc, 1)) == "{1i,2i,1o,2o}");
}

TEST_CASE("open sewing merges the two boundary cycles") {
  SurfaceType mo = parse_type("(1i,2i,1o)");
  SurfaceType co = parse_type("(1i,2o,1o)");
  // A coproduct leg into a product input: one four-puncture cycle.
  CHECK(print_type(sew_open(co, 1, mo, 2)) == "(1i,2i,2o,1o)");
  // Composing the two zipper maps creates a puncture-free boundary.
  SurfaceType c2o = parse_type("{1i},(1o)");
  SurfaceType o2c = parse_type("{1o},(1i)");
  CHECK(print_type(sew_open(c2o, 1, o2c, 1)) == "{1i,1o},()");
  // An open comb: associativity at the type level.
  CHECK(sew_open(mo, 1, mo, 1) == sew_open(mo, 1, mo, 2));
  CHECK(print_type(sew_open(mo, 1, mo, 1)) == "(1i,2i,3i,1o)");
}

TEST_CASE("self-sewing splits one cycle in two") {
  SurfaceType s = parse_type("(1i,2i,3i,1o)");
  CHECK(print_type(self_sew_open(s, 1, 2)) == "(3i,1o),()");
  CHECK(print_type(self_sew_open(s, 1, 3)) == "(2i),(1o)");
  CHECK(print_type(self_sew_open(s, 2, 3)) == "(1i,1o),()");

  CHECK_THROWS_AS(self_sew_open(s, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(self_sew_open(s, 1, 9), std::invalid_argument);
  SurfaceType closed_in = parse_type("{1i},(2i,3i,1o)");
  CHECK_THROWS_AS(self_sew_open(closed_in, 1, 2), std::invalid_argument);
  SurfaceType two = parse_type("(1i,1o),(2i,2o)");
  CHECK_THROWS_AS(self_sew_open(two, 1, 2), std::invalid_argument);
}

TEST_CASE("relabel permutes puncture indices") {
  SurfaceType mo = parse_type("(1i,2i,1o)");
  CHECK(print_type(relabel(mo, {2, 1}, {1})) == "(1i,1o,2i)");
  SurfaceType mc = parse_type("{1i,2i,1o}");
  CHECK(relabel(mc, {2, 1}, {1}) == mc);
  CHECK_THROWS_AS(relabel(mo, {1, 1}, {1}), std::invalid_argument);
  CHECK_THROWS_AS(relabel(mo, {1}, {1}), std::invalid_argument);
}

TEST_CASE("rotating the puncture set exchanges the zipper types") {
  SurfaceType c2o = parse_type("{1i},(1o)");
  SurfaceType o2c = parse_type("{1o},(1i)");
  CHECK(cyclic_act(c2o, {2, 1}) == o2c);
  CHECK(cyclic_act(o2c, {2, 1}) == c2o);
  CHECK(cyclic_act(c2o, {1, 2}) == c2o);

  SurfaceType mc = parse_type("{1i,2i,1o}");
  SurfaceType mo = parse_type("(1i,2i,1o)");
  CHECK(cyclic_act(mc, {2, 3, 1}) == mc);
  CHECK(cyclic_act(mo, {2, 3, 1}) == mo);

  SurfaceType cc = parse_type("{1i,1o,2o}");
  CHECK_THROWS_AS(cyclic_act(cc, {2, 3, 1}), std::invalid_argument);
  CHECK_THROWS_AS(cyclic_act(mc, {1, 1, 2}), std::invalid_argument);
}

TEST_CASE("type enumeration covers all boundary distributions") {
  auto two_in_one_out = enumerate_types(0, 2, 0, 1, 0);
  CHECK(two_in_one_out.size() == 6);
  CHECK(count_with_boundaries(two_in_one_out, 1, 0) == 2);

  // Results are canonical, sorted, duplicate-free.
  for (const auto& s : two_in_one_out) CHECK(canonicalized(s) == s);
  CHECK(std::is_sorted(two_in_one_out.begin(), two_in_one_out.end()));
  std::set<std::string> seen;
  for (const auto& s : two_in_one_out) CHECK(seen.insert(print_type(s)).second);

  // Three open inputs and an output on a single circle: all cyclic orders.
  auto three_in = enumerate_types(0, 3, 0, 1, 0);
  CHECK(count_with_boundaries(three_in, 1, 0) == 6);

  // Closed-only interfaces split by which index is closed vs open.
  auto one_one = enumerate_types(1, 0, 1, 0, 0);
  REQUIRE(one_one.size() == 1);
  CHECK(print_type(one_one[0]) == "{1i,1o}");
  auto with_empty = enumerate_types(1, 0, 1, 0, 1);
  CHECK(with_empty.size() == 2);
}
