// Serial reference versus OpenMP kernels: chain exploration and context
// pool evaluation. Prints wall times and checks that results agree.
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <functional>

#include "fmu/analysis.hpp"
#include "fmu/corpus.hpp"
#include "fmu/equiv.hpp"
#include "fmu/parser.hpp"

using namespace fmu;

namespace {

double seconds(const std::function<void()>& f) {
  auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool same_graph(const ChainGraph& a, const ChainGraph& b) {
  if (a.size() != b.size() || a.complete != b.complete) return false;
  for (size_t v = 0; v < a.size(); ++v) {
    if (!config_equal(a.nodes[v], b.nodes[v]) || a.out[v].size() != b.out[v].size()) return false;
    for (size_t i = 0; i < a.out[v].size(); ++i)
      if (a.out[v][i].to != b.out[v][i].to || a.out[v][i].weight != b.out[v][i].weight) return false;
  }
  return true;
}

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  struct Case {
    const char* name;
    TermPtr term;
  };
  std::vector<Case> cases = {
      {"er_seq 1/4 1/2", tm::app(corpus::mk_er_sequence({ratio(1, 4), ratio(1, 2)}), tm::unit())},
      {"vn 2 5", tm::app(corpus::mk_von_neumann(2, 5), tm::unit())},
      {"map_fused", corpus::make_program("map_fused").term},
      {"hesitant nat", tm::app(tm::tapp(corpus::mk_hesitant(), ty::nat()), tm::num(5))},
  };
  std::printf("%-16s %8s %10s %10s %8s %s\n", "chain", "nodes", "serial s", "omp s", "speedup", "equal");
  for (const auto& c : cases) {
    Config root = make_config(c.term);
    ChainGraph gs, gp;
    ExploreOptions po;
    po.node_budget = 200000;
    double ts = seconds([&] { gs = build_chain_serial(root, 200000); });
    double tp = seconds([&] { gp = explore(root, po); });
    std::printf("%-16s %8zu %10.4f %10.4f %8.2f %s\n", c.name, gs.size(), ts, tp, ts / tp,
                same_graph(gs, gp) ? "yes" : "NO");
  }

  CiuOptions o;
  o.effort.depth = 3;
  TypePtr b = corpus::bool_type();
  TypePtr t3 = ty::arrow(b, ty::arrow(b, b));
  std::pair<Verdict, Verdict> vs, vp;
  o.parallel = false;
  double ts = seconds([&] { vs = ciu_equiv(corpus::mk_exp(), corpus::mk_rnd(), t3, o); });
  o.parallel = true;
  double tp = seconds([&] { vp = ciu_equiv(corpus::mk_exp(), corpus::mk_rnd(), t3, o); });
  bool agree = vs.first.kind == vp.first.kind && vs.second.kind == vp.second.kind;
  std::printf("%-16s %8zu %10.4f %10.4f %8.2f %s\n", "ciu exp/rnd", vs.first.contexts_checked, ts, tp, ts / tp,
              agree ? "yes" : "NO");
  return 0;
}
