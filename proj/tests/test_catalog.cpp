#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "plf/catalog.hpp"

using namespace plf;

namespace {

std::vector<CatalogParams> grid() {
  // (n, r, k) tuples plus the (r', r'') splittings where they apply
  std::vector<CatalogParams> out;
  auto add = [&](int n, int r, int k, int rp, int rpp) {
    CatalogParams p;
    p.n = n;
    p.r = r;
    p.k = k;
    p.rp = rp;
    p.rpp = rpp;
    out.push_back(p);
  };
  add(1, 1, 1, 0, 0);
  add(2, 1, 1, 0, 0);
  add(2, 2, 1, 1, 1);
  add(3, 2, 1, 1, 1);
  add(1, 2, 0, 1, 1);
  add(1, 3, 1, 1, 2);
  add(1, 3, 1, 2, 1);
  add(2, 4, 1, 2, 2);
  add(2, 4, 1, 1, 3);
  add(0, 1, 0, 0, 0);
  add(0, 2, 0, 1, 1);
  return out;
}

int failures_of(const std::vector<EntryReport>& reps) {
  int f = 0;
  for (auto& r : reps) f += r.failures;
  return f;
}

}  // namespace

TEST_CASE("structural matrices") {
  auto reps = verify_catalog("base", grid(), 8, 11);
  CHECK(!reps.empty());
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics);
    CHECK(r.failures == 0);
  }
  EMat<Rat> J2 = mat_J<Rat>(2);
  CHECK(J2(0, 1) == Rat(1));
  CHECK(J2(1, 0) == Rat(1));
  CHECK(J2(0, 0) == Rat(0));
  EMat<Rat> S3 = mat_S<Rat>(3);
  CHECK(S3(0, 2) == Rat(1));
  CHECK(S3(1, 1) == Rat(-2));
  CHECK(S3(2, 0) == Rat(1));
  EMat<Rat> I2 = mat_Iprime<Rat>(2);
  CHECK(I2(0, 0) == Rat(1));
  CHECK(I2(1, 1) == Rat(-1));
}

TEST_CASE("random unitary sampling is honest") {
  std::mt19937_64 rng(5);
  for (int N : {2, 3, 4, 5}) {
    for (int i = 0; i < 5; ++i) {
      CHECK(in_unitary<QDelta>(random_unitary(N, rng)));
      CHECK(in_unitary<SplitQ>(random_unitary_split(N, rng)));
    }
  }
}

TEST_CASE("first-variable track") {
  auto reps = verify_catalog("mult1", grid(), 12, 21);
  CHECK(!reps.empty());
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("second-variable track, low case") {
  auto reps = verify_catalog("mult2-low", grid(), 12, 31);
  CHECK(!reps.empty());
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("second-variable track, mid case") {
  auto reps = verify_catalog("mult2-mid", grid(), 12, 41);
  CHECK(!reps.empty());
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("second-variable track, high case") {
  auto reps = verify_catalog("mult2-high", grid(), 12, 51);
  CHECK(!reps.empty());
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("appendix stability") {
  auto reps = verify_catalog("stability", grid(), 12, 61);
  CHECK(!reps.empty());
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics);
    CHECK(r.failures == 0);
  }
}

TEST_CASE("degenerate parameters pass vacuously") {
  std::vector<CatalogParams> degen;
  CatalogParams p;
  p.n = 1;
  p.r = 1;
  p.k = 1;
  degen.push_back(p);
  auto reps = verify_catalog("base", degen, 4, 71);
  CHECK(failures_of(reps) == 0);
}

TEST_CASE("jacobian exponents") {
  auto reps = verify_jacobians(grid(), 81);
  CHECK(!reps.empty());
  bool saw_nonzero = false;
  for (auto& r : reps) {
    INFO(r.id, " ", r.params, " ", r.semantics, " expected ", r.expected, " got ",
         r.computed);
    CHECK(r.pass);
    if (r.expected != 0) saw_nonzero = true;
  }
  CHECK(saw_nonzero);
}
