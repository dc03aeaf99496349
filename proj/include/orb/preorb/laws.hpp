#pragma once

#include <exception>
#include <functional>
#include <string>

#include "orb/error.hpp"
#include "orb/report.hpp"

namespace orb {

// A -f-> B -g-> C -h-> D, with stacked cells
//   delta: f1 => f2, sigma: f2 => f3, tau: f3 => f4   (A -> B)
//   eta: g1 => g2, mu: g2 => g3                      (B -> C)
//   gamma: h1 => h2                                  (C -> D)
template <class Ops>
struct LawDiagram {
  typename Ops::Sys f, g, h;
  typename Ops::Cell delta, sigma, tau, eta, mu, gamma;
};

namespace detail {

template <class Ops>
void require_typed(const Ops& ops, const LawDiagram<Ops>& d) {
  auto fail = [](const std::string& w) { throw Error(ErrorKind::IllTypedDiagram, w); };
  if (!ops.obj_eq(ops.dst(d.f), ops.src(d.g))) fail("f and g do not compose");
  if (!ops.obj_eq(ops.dst(d.g), ops.src(d.h))) fail("g and h do not compose");
  if (!ops.sys_eq(ops.cell_to(d.delta), ops.cell_from(d.sigma))) fail("delta and sigma do not stack");
  if (!ops.sys_eq(ops.cell_to(d.sigma), ops.cell_from(d.tau))) fail("sigma and tau do not stack");
  if (!ops.sys_eq(ops.cell_to(d.eta), ops.cell_from(d.mu))) fail("eta and mu do not stack");
  auto f1 = ops.cell_from(d.delta);
  auto g1 = ops.cell_from(d.eta);
  auto h1 = ops.cell_from(d.gamma);
  if (!ops.obj_eq(ops.dst(f1), ops.src(g1))) fail("delta and eta do not meet");
  if (!ops.obj_eq(ops.dst(g1), ops.src(h1))) fail("eta and gamma do not meet");
}

}  // namespace detail

// Every 2-category law on the diagram, by the equalities of Ops; one violation per failing law.
template <class Ops>
Report check_2cat_laws(const Ops& ops, const LawDiagram<Ops>& d) {
  detail::require_typed(ops, d);
  Report r;
  auto law = [&](const std::string& name, const std::function<bool()>& test) {
    ++r.checks;
    try {
      if (!test()) r.fail(name);
    } catch (const std::exception& e) {
      r.fail(name + " (threw: " + e.what() + ")");
    }
  };
  const auto& f = d.f;
  const auto& g = d.g;
  const auto& h = d.h;
  law("associativity of 1-cell composition",
      [&] { return ops.sys_eq(ops.compose(ops.compose(h, g), f), ops.compose(h, ops.compose(g, f))); });
  law("left unit of 1-cell composition", [&] { return ops.sys_eq(ops.compose(ops.id1(ops.dst(f)), f), f); });
  law("right unit of 1-cell composition", [&] { return ops.sys_eq(ops.compose(f, ops.id1(ops.src(f))), f); });
  law("associativity of vertical composition", [&] {
    return ops.cell_eq(ops.vcomp(ops.vcomp(d.tau, d.sigma), d.delta), ops.vcomp(d.tau, ops.vcomp(d.sigma, d.delta)));
  });
  law("right unit of vertical composition",
      [&] { return ops.cell_eq(ops.vcomp(d.delta, ops.idcell(ops.cell_from(d.delta))), d.delta); });
  law("left unit of vertical composition",
      [&] { return ops.cell_eq(ops.vcomp(ops.idcell(ops.cell_to(d.delta)), d.delta), d.delta); });
  law("associativity of horizontal composition", [&] {
    return ops.cell_eq(ops.hcomp(ops.hcomp(d.gamma, d.eta), d.delta), ops.hcomp(d.gamma, ops.hcomp(d.eta, d.delta)));
  });
  law("right unit of horizontal composition", [&] {
    auto a = ops.src(ops.cell_from(d.delta));
    return ops.cell_eq(ops.hcomp(d.delta, ops.idcell(ops.id1(a))), d.delta);
  });
  law("left unit of horizontal composition", [&] {
    auto b = ops.dst(ops.cell_from(d.delta));
    return ops.cell_eq(ops.hcomp(ops.idcell(ops.id1(b)), d.delta), d.delta);
  });
  law("identity cell of a composite",
      [&] { return ops.cell_eq(ops.idcell(ops.compose(g, f)), ops.hcomp(ops.idcell(g), ops.idcell(f))); });
  law("interchange", [&] {
    return ops.cell_eq(ops.hcomp(ops.vcomp(d.mu, d.eta), ops.vcomp(d.sigma, d.delta)),
                       ops.vcomp(ops.hcomp(d.mu, d.sigma), ops.hcomp(d.eta, d.delta)));
  });
  return r;
}

}  // namespace orb
