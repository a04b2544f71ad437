#include <doctest.h>

#include "compmod/partial_function.hpp"

using namespace compmod;

TEST_CASE("identity_partial is total and diagonal") {
  FiniteSet s{"a0", "a1"};
  PartialFunction id = identity_partial(s, "t");
  CHECK(id.graph() == std::map<Element, Element>{{"a0", "a0"}, {"a1", "a1"}});
  CHECK(id.source_type() == "t");
  CHECK(id.target_type() == "t");

  PartialFunction empty_id = identity_partial(FiniteSet{}, "t");
  CHECK(empty_id.empty());
}

TEST_CASE("compose_partial follows the strict rule") {
  PartialFunction f("s", "t", {{"a0", "b0"}});
  PartialFunction g("t", "u", {{"b0", "c0"}});
  CHECK(compose_partial(g, f).graph() ==
        std::map<Element, Element>{{"a0", "c0"}});

  PartialFunction g_empty("t", "u", {});
  CHECK(compose_partial(g_empty, f).empty());

  // Pointwise evaluation over the whole domain.
  PartialFunction f2("s", "t", {{"a0", "b0"}, {"a1", "b1"}});
  PartialFunction g2("t", "u", {{"b0", "c0"}});
  CHECK(compose_partial(g2, f2).graph() ==
        std::map<Element, Element>{{"a0", "c0"}});

  CHECK_THROWS_AS(compose_partial(f, g), TypeMismatchError);
}

TEST_CASE("identity is a unit for composition") {
  FiniteSet s{"a0", "a1"};
  FiniteSet t{"b0"};
  PartialFunction f("s", "t", {{"a0", "b0"}});
  PartialFunction id_s = identity_partial(s, "s");
  PartialFunction id_t = identity_partial(t, "t");
  CHECK(partial_equal(compose_partial(f, id_s), f));
  CHECK(partial_equal(compose_partial(id_t, f), f));
}

TEST_CASE("restrict_partial filters the graph pointwise") {
  PartialFunction f("s", "t", {{"a0", "b0"}, {"a1", "b0"}});
  PartialFunction r =
      restrict_partial(f, FiniteSet{"a0"}, FiniteSet{"b0"}, "s'", "t'");
  CHECK(r.graph() == std::map<Element, Element>{{"a0", "b0"}});
  CHECK(r.source_type() == "s'");

  CHECK(restrict_partial(f, FiniteSet{}, FiniteSet{"b0"}, "s'", "t'").empty());

  FiniteSet carrier{"a0", "a1"};
  PartialFunction id = identity_partial(carrier, "s");
  PartialFunction rid =
      restrict_partial(id, FiniteSet{"a1"}, FiniteSet{"a1"}, "s", "s");
  CHECK(rid.graph() == std::map<Element, Element>{{"a1", "a1"}});
}

TEST_CASE("partial_equal is extensional") {
  PartialFunction f("s", "t", {{"a0", "b0"}});
  PartialFunction g("s", "t", {{"a0", "b0"}});
  PartialFunction h("s", "t", {});
  CHECK(partial_equal(f, g));
  CHECK_FALSE(partial_equal(f, h));

  // Same graph, different declared types: not equal.
  PartialFunction f2("s2", "t", {{"a0", "b0"}});
  CHECK_FALSE(partial_equal(f, f2));

  // Graphs are maps: insertion order cannot matter.
  PartialFunction two("s", "t", {{"a1", "b1"}, {"a0", "b0"}});
  PartialFunction two_other("s", "t", {{"a0", "b0"}, {"a1", "b1"}});
  CHECK(partial_equal(two, two_other));
}

TEST_CASE("all_partial_functions enumerates the whole function space") {
  FiniteSet src{"x0", "x1"};
  FiniteSet tgt{"y0", "y1", "y2"};
  auto fns = all_partial_functions(src, tgt, "s", "t");
  CHECK(fns.size() == 16);  // (3+1)^2
  CHECK(std::is_sorted(fns.begin(), fns.end()));

  auto none = all_partial_functions(FiniteSet{}, tgt, "s", "t");
  REQUIRE(none.size() == 1);
  CHECK(none[0].empty());
}

TEST_CASE("domain restriction of composition") {
  // dom(g.f) = {x in dom f : f(x) in dom g}, exhaustively at small size.
  FiniteSet a{"x0", "x1"};
  FiniteSet b{"y0", "y1"};
  auto fs = all_partial_functions(a, b, "a", "b");
  auto gs = all_partial_functions(b, a, "b", "a");
  for (const auto& f : fs) {
    for (const auto& g : gs) {
      PartialFunction gf = compose_partial(g, f);
      for (const auto& x : a) {
        bool expected = f.defined_at(x) && g.defined_at(f.defined_at(x) ? f.at(x) : "");
        CHECK(gf.defined_at(x) == expected);
      }
    }
  }
}

TEST_CASE("composition is associative, exhaustively at small size") {
  FiniteSet a{"x0", "x1"};
  FiniteSet b{"y0"};
  auto fs = all_partial_functions(a, b, "a", "b");
  auto gs = all_partial_functions(b, a, "b", "a");
  auto hs = all_partial_functions(a, b, "a", "b");
  for (const auto& f : fs) {
    for (const auto& g : gs) {
      for (const auto& h : hs) {
        CHECK(partial_equal(compose_partial(h, compose_partial(g, f)),
                            compose_partial(compose_partial(h, g), f)));
      }
    }
  }

  // Whole endo-function space of a 3-element set.
  FiniteSet c{"z0", "z1", "z2"};
  auto es = all_partial_functions(c, c, "c", "c");
  REQUIRE(es.size() == 64);
  for (const auto& f : es) {
    for (const auto& g : es) {
      for (const auto& h : es) {
        if (!partial_equal(compose_partial(h, compose_partial(g, f)),
                           compose_partial(compose_partial(h, g), f))) {
          FAIL("associativity failed");
        }
      }
    }
  }
}
