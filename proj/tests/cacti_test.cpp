#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "oc/cacti.hpp"
#include "oc/surface_type.hpp"
#include "oc/text_io.hpp"

using namespace oc;

namespace {

const ManifoldDims kProbe{10, 3};

CactiDescriptor desc(const std::string& type) {
  return desc_from_type(parse_type(type));
}

}  // namespace

TEST_CASE("zipper into the open sector") {
  CactiDescriptor d = desc("{1i},(1o)");
  CHECK(d.c == 1);
  CHECK(d.o == 0);
  CHECK(d.circles == 1);
  CHECK(d.ghost_edges == 1);
  CHECK(d.output_kind == OutputKind::Open);
  CHECK_NOTHROW(validate(d));
  CHECK(operation_degree_form(d) == LinearForm{-1, 1});
  CHECK(operation_degree(d, kProbe) == -7);
  CHECK(embedding_codim_form(d) == LinearForm{2, -1});
  CHECK(embedding_codim(d, kProbe) == 17);
}

TEST_CASE("zipper into the closed sector") {
  CactiDescriptor d = desc("{1o},(1i)");
  CHECK(d.circles == 1);
  CHECK(d.ghost_edges == 0);
  CHECK(d.output_kind == OutputKind::Closed);
  CHECK(d.b().has_value());
  CHECK(*d.b() == 1);
  CHECK(operation_degree_form(d) == LinearForm{0, -1});
  CHECK(embedding_codim_form(d) == LinearForm{0, 2});
}

TEST_CASE("composite of the two zippers") {
  CactiDescriptor d = desc("{1i,1o},()");
  CHECK(d.circles == 2);
  CHECK(d.ghost_edges == 1);
  REQUIRE(d.black_circles.has_value());
  CHECK(*d.black_circles == 1);
  CHECK(operation_degree_form(d) == LinearForm{-1, 0});
  CHECK(embedding_codim_form(d) == LinearForm{2, 1});
}

TEST_CASE("closing an open product, with and without its arcs") {
  CactiDescriptor d = desc("{1o},(1i,2i)");
  CHECK(d.circles == 1);
  CHECK(d.ghost_edges == 0);
  REQUIRE(d.b().has_value());
  CHECK(*d.b() == 2);
  CHECK(operation_degree_form(d) == LinearForm{0, -2});
  CHECK(embedding_codim_form(d) == LinearForm{0, 4});

  // Contracting the black arcs keeps the degree but halves the defect.
  CactiDescriptor bare = d;
  bare.black_intervals = 0;
  bare.black_circles = 0;
  CHECK(operation_degree_form(bare) == LinearForm{0, -2});
  CHECK(embedding_codim_form(bare) == LinearForm{0, 2});
}

TEST_CASE("two circles joined by a ghost edge") {
  CactiDescriptor d = desc("{1o},(1i,2i),(3i,4i)");
  CHECK(d.circles == 2);
  CHECK(d.ghost_edges == 1);
  REQUIRE(d.b().has_value());
  CHECK(*d.b() == 4);
  CHECK(operation_degree_form(d) == LinearForm{-1, -4});
  CHECK(operation_degree(d, kProbe) == -22);
  CHECK(embedding_codim_form(d) == LinearForm{2, 8});
  CHECK(embedding_codim(d, kProbe) == 44);
}

TEST_CASE("closed product descriptor") {
  CactiDescriptor d = desc("{1i,2i,1o}");
  CHECK(d.c == 2);
  CHECK(d.circles == 2);
  CHECK(d.ghost_edges == 1);
  CHECK(operation_degree_form(d) == LinearForm{-1, 0});
  CHECK(embedding_codim_form(d) == LinearForm{2, 0});
}

TEST_CASE("ghost-edge law by output kind") {
  // Closed outputs need one fewer connector than circles; open outputs
  // need exactly one per circle.
  for (const std::string t : {"{1i,1o}", "{1o},(1i)", "{1i,1o},()"}) {
    CactiDescriptor d = desc(t);
    CHECK(d.output_kind == OutputKind::Closed);
    CHECK(d.ghost_edges == d.circles - 1);
  }
  for (const std::string t : {"(1o)", "{1i},(1o)", "(1i,2i,1o)", "(1o),()"}) {
    CactiDescriptor d = desc(t);
    CHECK(d.output_kind == OutputKind::Open);
    CHECK(d.ghost_edges == d.circles);
  }
  CactiDescriptor broken = desc("{1i,1o}");
  broken.ghost_edges += 1;
  CHECK_THROWS_AS(validate(broken), std::invalid_argument);
}

TEST_CASE("only one-output interfaces have a descriptor") {
  CHECK_THROWS_AS(desc("{1i,1o,2o}"), std::invalid_argument);
  CHECK_THROWS_AS(desc("{1i,1o},(2o)"), std::invalid_argument);
  // A closed output with no inputs and no boundaries has no lobes at all,
  // so no connector count can satisfy the law.
  CHECK_THROWS_AS(desc("{1o}"), std::invalid_argument);
}

TEST_CASE("composition adds operation degrees") {
  std::vector<CactiDescriptor> all, closed_out, open_out;
  for (int ci = 0; ci <= 2; ++ci)
    for (int oi = 0; ci + oi <= 3; ++oi)
      for (int kind = 0; kind < 2; ++kind) {
        int co = kind == 0 ? 1 : 0, oo = kind == 0 ? 0 : 1;
        for (const SurfaceType& s : enumerate_types(ci, oi, co, oo, 1)) {
          CactiDescriptor d;
          try {
            d = desc_from_type(s);
          } catch (const std::invalid_argument&) {
            continue;  // no-lobe corner such as a bare closed output
          }
          all.push_back(d);
          (d.output_kind == OutputKind::Closed ? closed_out : open_out)
              .push_back(d);
        }
      }
  REQUIRE(all.size() > 20);
  REQUIRE(!closed_out.empty());
  REQUIRE(!open_out.empty());

  std::mt19937 rng(314159);
  int exercised = 0;
  for (int iter = 0; iter < 500; ++iter) {
    const CactiDescriptor& d1 = all[rng() % all.size()];
    if (d1.c == 0 && d1.o == 0) continue;
    Color at;
    if (d1.c > 0 && d1.o > 0)
      at = rng() % 2 ? Color::Closed : Color::Open;
    else
      at = d1.c > 0 ? Color::Closed : Color::Open;
    const auto& providers = at == Color::Closed ? closed_out : open_out;
    const CactiDescriptor& d2 = providers[rng() % providers.size()];
    CactiDescriptor both = compose_descriptors(d1, at, d2);
    CHECK(operation_degree_form(both).m_coef ==
          operation_degree_form(d1).m_coef + operation_degree_form(d2).m_coef);
    CHECK(operation_degree_form(both).k_coef ==
          operation_degree_form(d1).k_coef + operation_degree_form(d2).k_coef);
    // Composition forgets the black data, so the defect is unavailable.
    CHECK(!both.b().has_value());
    CHECK_THROWS_AS(embedding_codim_form(both), std::invalid_argument);
    ++exercised;
  }
  CHECK(exercised > 400);
}

TEST_CASE("composition rejects mismatched plugs") {
  CactiDescriptor closed_provider = desc("{1o},(1i)");
  CactiDescriptor open_provider = desc("{1i},(1o)");
  CactiDescriptor receiver = desc("{1i,1o}");  // closed input only
  CHECK_THROWS_AS(
      compose_descriptors(receiver, Color::Closed, open_provider),
      std::invalid_argument);
  CHECK_THROWS_AS(compose_descriptors(receiver, Color::Open, open_provider),
                  std::invalid_argument);
  CHECK_NOTHROW(compose_descriptors(receiver, Color::Closed, closed_provider));
}

TEST_CASE("composite descriptors agree with the sewn type") {
  // Composing descriptors tracks the circle count of the sewn surface.
  SurfaceType f = parse_type("{1i},(1o)");
  SurfaceType g = parse_type("{1o},(1i)");
  CactiDescriptor straight = desc_from_type(sew_open(f, 1, g, 1));
  CactiDescriptor stepwise =
      compose_descriptors(desc_from_type(g), Color::Open, desc_from_type(f));
  CHECK(straight.circles == stepwise.circles);
  CHECK(straight.ghost_edges == stepwise.ghost_edges);
  CHECK(straight.output_kind == stepwise.output_kind);
  CHECK(operation_degree_form(straight) == operation_degree_form(stepwise));
}
