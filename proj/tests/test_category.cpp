#include <doctest.h>

#include "compmod/category.hpp"
#include "compmod/generators.hpp"

using namespace compmod;

namespace {

// Poset 0 -> 1 with chosen presheaf values.
FiniteCategory poset01() {
  FiniteCategory cat;
  cat.objects = {"0", "1"};
  cat.arrows = {{"id0", "0", "0"}, {"id1", "1", "1"}, {"a", "0", "1"}};
  cat.identities = {{"0", "id0"}, {"1", "id1"}};
  cat.composition[{"id0", "id0"}] = "id0";
  cat.composition[{"id1", "id1"}] = "id1";
  cat.composition[{"a", "id0"}] = "a";
  cat.composition[{"id1", "a"}] = "a";
  return cat;
}

Presheaf poset01_presheaf(const FiniteSet& s0, const FiniteSet& s1,
                          std::map<Element, Element> a_graph) {
  Presheaf S;
  S.on_objects["0"] = s0;
  S.on_objects["1"] = s1;
  S.on_arrows["id0"] = identity_partial(s0, "0");
  S.on_arrows["id1"] = identity_partial(s1, "1");
  S.on_arrows["a"] = PartialFunction("0", "1", std::move(a_graph));
  return S;
}

FiniteCategory z2_category() {
  FiniteCategory cat;
  cat.objects = {"c"};
  cat.arrows = {{"e", "c", "c"}, {"s", "c", "c"}};
  cat.identities = {{"c", "e"}};
  cat.composition[{"e", "e"}] = "e";
  cat.composition[{"e", "s"}] = "s";
  cat.composition[{"s", "e"}] = "s";
  cat.composition[{"s", "s"}] = "e";
  return cat;
}

}  // namespace

TEST_CASE("one-object one-arrow category is valid") {
  FiniteCategory cat;
  cat.objects = {"c"};
  cat.arrows = {{"id", "c", "c"}};
  cat.identities = {{"c", "id"}};
  cat.composition[{"id", "id"}] = "id";
  CHECK(validate_category(cat).ok());
}

TEST_CASE("broken composition tables are caught with witnesses") {
  FiniteCategory cat = z2_category();
  cat.composition[{"e", "s"}] = "e";  // identity law broken
  ValidationReport r = validate_category(cat);
  CHECK_FALSE(r.ok());

  // Associativity violation needs three arrows: tamper with Z3.
  FiniteCategory z3;
  z3.objects = {"c"};
  z3.arrows = {{"e", "c", "c"}, {"a", "c", "c"}, {"b", "c", "c"}};
  z3.identities = {{"c", "e"}};
  auto set = [&](const std::string& g, const std::string& f,
                 const std::string& gf) { z3.composition[{g, f}] = gf; };
  set("e", "e", "e"); set("e", "a", "a"); set("e", "b", "b");
  set("a", "e", "a"); set("b", "e", "b");
  set("a", "a", "b"); set("a", "b", "e"); set("b", "a", "e");
  set("b", "b", "a");
  REQUIRE(validate_category(z3).ok());
  z3.composition[{"b", "b"}] = "b";  // (a.b).b != a.(b.b)
  ValidationReport r3 = validate_category(z3);
  REQUIRE_FALSE(r3.ok());
  bool assoc = false;
  for (const auto& v : r3.violations) {
    if (v.kind == ViolationKind::AssociativityFailure) assoc = true;
  }
  CHECK(assoc);

  FiniteCategory missing = poset01();
  missing.identities.erase("1");
  CHECK_FALSE(validate_category(missing).ok());
}

TEST_CASE("is_mono: identities, posets, and collapsing arrows") {
  FiniteCategory cat = poset01();
  REQUIRE(validate_category(cat).ok());
  CHECK(is_mono(cat, "id0"));
  CHECK(is_mono(cat, "a"));  // in a poset every arrow is mono

  // A collapsing arrow: q.u = q.v for distinct parallel u, v.
  FiniteCategory col;
  col.objects = {"x", "y"};
  col.arrows = {{"idx", "x", "x"},
                {"idy", "y", "y"},
                {"u", "x", "y"},
                {"v", "x", "y"},
                {"q", "y", "y"}};
  col.identities = {{"x", "idx"}, {"y", "idy"}};
  col.composition[{"idx", "idx"}] = "idx";
  col.composition[{"idy", "idy"}] = "idy";
  col.composition[{"u", "idx"}] = "u";
  col.composition[{"v", "idx"}] = "v";
  col.composition[{"idy", "u"}] = "u";
  col.composition[{"idy", "v"}] = "v";
  col.composition[{"q", "q"}] = "q";
  col.composition[{"q", "idy"}] = "q";
  col.composition[{"idy", "q"}] = "q";
  col.composition[{"q", "u"}] = "u";
  col.composition[{"q", "v"}] = "u";  // collapse
  REQUIRE(validate_category(col).ok());
  CHECK_FALSE(is_mono(col, "q"));
  CHECK(is_mono(col, "idy"));
}

TEST_CASE("presheaf validation: functoriality and totality") {
  FiniteCategory cat = poset01();
  FiniteSet s0{"p"};
  FiniteSet s1{"q"};
  Presheaf good = poset01_presheaf(s0, s1, {{"p", "q"}});
  CHECK(validate_presheaf(cat, good).ok());

  Presheaf partial_map = poset01_presheaf(s0, s1, {});
  CHECK_FALSE(validate_presheaf(cat, partial_map).ok());

  Presheaf bad_id = good;
  bad_id.on_arrows["id1"] = PartialFunction("1", "1", {{"q", "q"}});
  bad_id.on_objects["1"] = FiniteSet{"q", "r"};
  CHECK_FALSE(validate_presheaf(cat, bad_id).ok());
}

TEST_CASE("pullbacks in a poset are meets") {
  FiniteCategory cat = poset01();
  auto pbs = pullbacks_of(cat, "a", "a");
  REQUIRE(pbs.size() == 1);
  CHECK(pbs[0].apex == "0");

  auto pbs2 = pullbacks_of(cat, "a", "id1");
  REQUIRE(pbs2.size() == 1);
  CHECK(pbs2[0].apex == "0");
}

TEST_CASE("preserves_pullbacks: positive and negative instances") {
  FiniteCategory cat = poset01();
  FiniteSet s0{"p"};
  FiniteSet s1{"q"};
  CHECK(preserves_pullbacks(cat, poset01_presheaf(s0, s1, {{"p", "q"}})));

  // Injective but not surjective still preserves here.
  FiniteSet wide{"q", "r"};
  CHECK(preserves_pullbacks(cat, poset01_presheaf(s0, wide, {{"p", "q"}})));

  // Collapsing a genuine pullback square: S(a) not injective makes the
  // mono's self-pullback square collapse.
  FiniteSet two{"p", "p2"};
  Presheaf collapse = poset01_presheaf(two, s1, {{"p", "q"}, {"p2", "q"}});
  REQUIRE(validate_presheaf(cat, collapse).ok());
  CHECK_FALSE(preserves_pullbacks(cat, collapse));
}

TEST_CASE("cospans without pullbacks are preserved vacuously") {
  // V-shape a -> c <- b with nothing below a and b: the cospan has no cone,
  // so there is no pullback to preserve.
  FiniteCategory vee;
  vee.objects = {"a", "b", "c"};
  vee.arrows = {{"ida", "a", "a"}, {"idb", "b", "b"}, {"idc", "c", "c"},
                {"f", "a", "c"},  {"g", "b", "c"}};
  vee.identities = {{"a", "ida"}, {"b", "idb"}, {"c", "idc"}};
  vee.composition[{"ida", "ida"}] = "ida";
  vee.composition[{"idb", "idb"}] = "idb";
  vee.composition[{"idc", "idc"}] = "idc";
  vee.composition[{"f", "ida"}] = "f";
  vee.composition[{"idc", "f"}] = "f";
  vee.composition[{"g", "idb"}] = "g";
  vee.composition[{"idc", "g"}] = "g";
  REQUIRE(validate_category(vee).ok());
  CHECK(pullbacks_of(vee, "f", "g").empty());

  Presheaf S;
  S.on_objects["a"] = FiniteSet{"x"};
  S.on_objects["b"] = FiniteSet{"y"};
  S.on_objects["c"] = FiniteSet{"z"};
  S.on_arrows["ida"] = identity_partial(FiniteSet{"x"}, "a");
  S.on_arrows["idb"] = identity_partial(FiniteSet{"y"}, "b");
  S.on_arrows["idc"] = identity_partial(FiniteSet{"z"}, "c");
  S.on_arrows["f"] = PartialFunction("a", "c", {{"x", "z"}});
  S.on_arrows["g"] = PartialFunction("b", "c", {{"y", "z"}});
  REQUIRE(validate_presheaf(vee, S).ok());
  CHECK(preserves_pullbacks(vee, S));
}

TEST_CASE("enumerate_partial_arrows") {
  FiniteCategory cat = poset01();
  // Into 0: only id0 is a mono into 0; maps to 1: a. Plus (id0, id0).
  auto pas = enumerate_partial_arrows(cat, "0", "1");
  REQUIRE(pas.size() == 1);
  CHECK(pas[0].mono == "id0");
  CHECK(pas[0].map == "a");

  // Total arrows (1_{c1}, f) are always present.
  auto endo = enumerate_partial_arrows(cat, "0", "0");
  REQUIRE(endo.size() == 1);
  CHECK(endo[0].mono == "id0");
  CHECK(endo[0].map == "id0");

  // One-object group-like category: every arrow mono, so
  // |arrows into c| x |arrows to c| pairs.
  FiniteCategory z2 = z2_category();
  CHECK(enumerate_partial_arrows(z2, "c", "c").size() == 4);

  // From 1 to 0: the mono a: 0 -> 1 gives (a, id0).
  auto back = enumerate_partial_arrows(cat, "1", "0");
  REQUIRE(back.size() == 1);
  CHECK(back[0].mono == "a");
  CHECK(back[0].map == "id0");
}

TEST_CASE("functor validation") {
  FiniteCategory cat = poset01();
  FunctorData id;
  for (const auto& c : cat.objects) id.on_objects[c] = c;
  for (const auto& a : cat.arrows) id.on_arrows[a.name] = a.name;
  CHECK(validate_functor(cat, cat, id).ok());

  FunctorData broken = id;
  broken.on_arrows["a"] = "id1";  // wrong source
  CHECK_FALSE(validate_functor(cat, cat, broken).ok());
}

TEST_CASE("category-level fibration checks") {
  FiniteCategory cat = poset01();
  FunctorData id;
  for (const auto& c : cat.objects) id.on_objects[c] = c;
  for (const auto& a : cat.arrows) id.on_arrows[a.name] = a.name;
  CHECK(is_cat_fibration(cat, cat, id));

  // Discrete category over the poset: the arrow "a" has no lift.
  FiniteCategory disc;
  disc.objects = {"e"};
  disc.arrows = {{"ide", "e", "e"}};
  disc.identities = {{"e", "ide"}};
  disc.composition[{"ide", "ide"}] = "ide";
  FunctorData to1;
  to1.on_objects["e"] = "1";
  to1.on_arrows["ide"] = "id1";
  REQUIRE(validate_functor(disc, cat, to1).ok());
  CHECK_FALSE(is_cat_fibration(disc, cat, to1));
}

TEST_CASE("generated category instances validate and preserve pullbacks") {
  Rng rng(909);
  for (int i = 0; i < 20; ++i) {
    CategoryInstance inst = gen_category_instance(rng);
    REQUIRE(validate_category(inst.cat).ok());
    REQUIRE(validate_presheaf(inst.cat, inst.S).ok());
    CHECK(preserves_pullbacks(inst.cat, inst.S));
  }
}

TEST_CASE("category of elements is a valid category with singleton presheaf") {
  FiniteCategory cat = poset01();
  Presheaf S = poset01_presheaf(FiniteSet{"p"}, FiniteSet{"q"}, {{"p", "q"}});
  ElementsCategory el = category_of_elements(cat, S);
  CHECK(validate_category(el.cat).ok());
  CHECK(validate_presheaf(el.cat, el.pr2).ok());
  CHECK(el.cat.objects.size() == 2);
  for (const auto& [name, s] : el.pr2.on_objects) {
    (void)name;
    CHECK(s.size() == 1);
  }
}
