#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cnet/conjugate.hpp"
#include "cnet/dot.hpp"
#include "cnet/json_io.hpp"
#include "cnet/multicast.hpp"
#include "cnet/routing.hpp"
#include "cnet/topology.hpp"
#include "cnet/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw cnet::ParseError("cannot write " + path);
  out << text;
}

void emit(const std::optional<std::string>& path, const cnet::json& j) {
  if (path)
    cnet::write_json_file(*path, j);
  else
    std::cout << cnet::dump(j);
}

int run_build(const std::string& what, const std::vector<int>& args, bool fuse,
              const std::optional<std::string>& out) {
  cnet::NetworkTopology t;
  if (what == "benes") t = cnet::build_benes(args.at(0));
  else if (what == "copy") t = cnet::build_copy_network(args.at(0));
  else if (what == "cascade") t = cnet::build_multicast_cascade(args.at(0), fuse);
  else t = cnet::build_clos(args.at(0), args.at(1), args.at(2));
  t.validate();
  emit(out, cnet::to_json(t));
  return kExitOk;
}

int run_conjugate(const std::string& in, const std::optional<std::string>& out,
                  const std::optional<std::string>& routes_in,
                  const std::optional<std::string>& routes_out, bool counts) {
  cnet::NetworkTopology base = cnet::topology_from_json(cnet::load_json_file(in));
  cnet::ConjugateTopology conj = cnet::conjugate_of(base);
  emit(out, cnet::to_json(conj));
  if (counts) std::cerr << cnet::dump(cnet::to_json(cnet::element_counts(conj)));
  if (routes_in) {
    auto routes = cnet::routes_from_json(cnet::load_json_file(*routes_in));
    auto mapped = cnet::map_routes(conj, routes);
    emit(routes_out, cnet::routes_to_json(mapped));
  }
  return kExitOk;
}

int run_route(const std::string& in, const std::string& requests_path,
              const std::optional<std::string>& out) {
  cnet::NetworkTopology t = cnet::topology_from_json(cnet::load_json_file(in));
  auto requests = cnet::requests_from_json(cnet::load_json_file(requests_path));
  cnet::json result;
  std::vector<cnet::Route> routes;
  if (t.kind == cnet::NetworkKind::Benes || t.kind == cnet::NetworkKind::Copy) {
    auto assignment = cnet::looping_assign(t.params.n, requests);
    routes = cnet::benes_routes(t.params.n, requests, assignment);
    result["assignment"] = cnet::benes_assignment_to_json(assignment).at("assignment");
  } else if (t.kind == cnet::NetworkKind::Clos) {
    cnet::ClosParams p{t.params.n, t.params.k, t.params.m};
    auto assignment = cnet::clos_assign_general(p, requests);
    routes = cnet::clos_routes(p, requests, assignment);
    result["assignment"] = cnet::clos_assignment_to_json(assignment).at("assignment");
  } else {
    throw cnet::InvalidKindError("route expects a benes, copy or clos topology");
  }
  result["routes"] = cnet::routes_to_json(routes).at("routes");
  emit(out, result);
  return kExitOk;
}

int run_multicast(const std::string& in, const std::string& requests_path,
                  const std::optional<std::string>& out) {
  cnet::NetworkTopology t = cnet::topology_from_json(cnet::load_json_file(in));
  auto requests = cnet::multicast_requests_from_json(cnet::load_json_file(requests_path));
  cnet::MulticastRealization real = cnet::multicast_route(requests, t);
  emit(out, cnet::to_json(real));
  return kExitOk;
}

int run_verify(const std::string& in, const std::string& routes_path,
               const std::optional<std::string>& out) {
  cnet::json topo_json = cnet::load_json_file(in);
  auto routes = cnet::routes_from_json(cnet::load_json_file(routes_path));
  std::vector<cnet::Violation> violations;
  if (topo_json.at("kind").get<std::string>() == "conjugate") {
    cnet::ConjugateTopology conj = cnet::conjugate_from_json(topo_json);
    violations = cnet::check_crosstalk_free(conj, routes);
  } else {
    cnet::NetworkTopology t = cnet::topology_from_json(topo_json);
    violations = cnet::check_link_disjoint(t, routes);
  }
  emit(out, cnet::violations_to_json(violations));
  return violations.empty() ? kExitOk : kExitViolations;
}

int run_sweep(const std::string& what, const std::vector<int>& args, bool exhaustive,
              long long samples, std::uint64_t seed, const std::optional<std::string>& out) {
  std::optional<long long> sample_count;
  if (!exhaustive) sample_count = samples;
  cnet::SweepSummary summary;
  if (what == "benes")
    summary = cnet::sweep_benes_permutations(args.at(0), sample_count, seed);
  else if (what == "clos")
    summary = cnet::sweep_clos_permutations(args.at(0), args.at(1), args.at(2), sample_count, seed);
  else
    summary = cnet::sweep_monotonic_multicast(args.at(0), sample_count, seed);
  emit(out, cnet::to_json(summary));
  bool clean = summary.link_violations == 0 && summary.node_violations == 0 &&
               summary.rank_violations == 0;
  return clean ? kExitOk : kExitViolations;
}

int run_render(const std::string& in, const std::optional<std::string>& routes_path,
               const std::optional<std::string>& out) {
  cnet::json topo_json = cnet::load_json_file(in);
  cnet::NetworkTopology t = cnet::topology_from_json(topo_json);
  std::vector<cnet::Route> routes;
  if (routes_path) routes = cnet::routes_from_json(cnet::load_json_file(*routes_path));
  std::string dot = cnet::render_dot(t, routes);
  if (out)
    write_text_file(*out, dot);
  else
    std::cout << dot;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multistage switching networks, their crosstalk-free conjugates, and "
               "nonblocking route assignment"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Construct a network topology");
  int build_ports = 0;
  std::vector<int> clos_args;
  bool fuse = false;
  std::optional<std::string> build_out;
  auto* opt_benes = build->add_option("--benes", build_ports, "Benes network with N ports");
  auto* opt_copy = build->add_option("--copy", build_ports, "Benes copy network with N ports");
  auto* opt_cascade =
      build->add_option("--cascade", build_ports, "Copy + point-to-point cascade with N ports");
  auto* opt_clos =
      build->add_option("--clos", clos_args, "Three-stage Clos network: n k m")->expected(3);
  opt_benes->excludes(opt_copy)->excludes(opt_cascade)->excludes(opt_clos);
  opt_copy->excludes(opt_cascade)->excludes(opt_clos);
  opt_cascade->excludes(opt_clos);
  build->add_flag("--fuse,!--no-fuse", fuse,
                  "Combine the copy output stage with the point-to-point input stage");
  build->add_option("-o,--output", build_out, "Output topology file");

  // conjugate
  auto* conj = app.add_subcommand("conjugate", "Apply the conjugate transformation");
  std::string conj_in;
  std::optional<std::string> conj_out, conj_routes_in, conj_routes_out;
  bool conj_counts = false;
  conj->add_option("-i,--input", conj_in, "Topology file")->required();
  conj->add_option("-o,--output", conj_out, "Conjugate topology file");
  conj->add_option("-r,--routes", conj_routes_in, "Base-network routes to map");
  conj->add_option("--mapped-routes", conj_routes_out, "Where to write the mapped routes");
  conj->add_flag("--counts", conj_counts, "Print element counts to stderr");

  // route
  auto* route = app.add_subcommand("route", "Nonblocking route assignment for a permutation");
  std::string route_in, route_requests;
  std::optional<std::string> route_out;
  route->add_option("-i,--input", route_in, "Topology file")->required();
  route->add_option("-r,--requests", route_requests, "Connection request file")->required();
  route->add_option("-o,--output", route_out, "Assignment + routes file");

  // multicast
  auto* mc = app.add_subcommand("multicast", "Realize multicast requests over a cascade");
  std::string mc_in, mc_requests;
  std::optional<std::string> mc_out;
  mc->add_option("-i,--input", mc_in, "Cascade topology file")->required();
  mc->add_option("-r,--requests", mc_requests, "Multicast request file")->required();
  mc->add_option("-o,--output", mc_out, "Realization file");

  // verify
  auto* verify = app.add_subcommand("verify", "Check a route set for collisions");
  std::string verify_in, verify_routes;
  std::optional<std::string> verify_out;
  verify->add_option("-i,--input", verify_in, "Topology file")->required();
  verify->add_option("-r,--routes", verify_routes, "Routes file")->required();
  verify->add_option("-o,--output", verify_out, "Violation report file");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run disjointness oracles over many request sets");
  int sweep_ports = 0;
  std::vector<int> sweep_clos_args;
  bool exhaustive = false;
  long long samples = 1000;
  std::uint64_t seed = 1;
  std::optional<std::string> sweep_out;
  auto* sw_benes =
      sweep->add_option("--benes", sweep_ports, "Permutations on an N-port Benes network");
  auto* sw_clos =
      sweep->add_option("--clos", sweep_clos_args, "Permutations on a Clos network: n k m")
          ->expected(3);
  auto* sw_mono = sweep->add_option("--monotonic", sweep_ports,
                                    "Monotone multicast sets on an N-port copy network");
  sw_benes->excludes(sw_clos)->excludes(sw_mono);
  sw_clos->excludes(sw_mono);
  sweep->add_flag("--exhaustive", exhaustive, "Enumerate every case (small N only)");
  sweep->add_option("--samples", samples, "Seeded random cases when not exhaustive");
  sweep->add_option("--seed", seed, "Random seed");
  sweep->add_option("-o,--output", sweep_out, "Summary file");

  // render
  auto* render = app.add_subcommand("render", "Emit Graphviz DOT for a topology");
  std::string render_in;
  std::optional<std::string> render_routes, render_out;
  render->add_option("-i,--input", render_in, "Topology file")->required();
  render->add_option("-r,--routes", render_routes, "Routes to highlight");
  render->add_option("-o,--output", render_out, "DOT output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (build->parsed()) {
      if (*opt_benes) return run_build("benes", {build_ports}, fuse, build_out);
      if (*opt_copy) return run_build("copy", {build_ports}, fuse, build_out);
      if (*opt_cascade) return run_build("cascade", {build_ports}, fuse, build_out);
      if (*opt_clos) return run_build("clos", clos_args, fuse, build_out);
      std::cerr << "build: pick one of --benes, --clos, --copy, --cascade\n";
      return kExitUsage;
    }
    if (conj->parsed())
      return run_conjugate(conj_in, conj_out, conj_routes_in, conj_routes_out, conj_counts);
    if (route->parsed()) return run_route(route_in, route_requests, route_out);
    if (mc->parsed()) return run_multicast(mc_in, mc_requests, mc_out);
    if (verify->parsed()) return run_verify(verify_in, verify_routes, verify_out);
    if (sweep->parsed()) {
      if (*sw_benes) return run_sweep("benes", {sweep_ports}, exhaustive, samples, seed, sweep_out);
      if (*sw_clos) return run_sweep("clos", sweep_clos_args, exhaustive, samples, seed, sweep_out);
      if (*sw_mono)
        return run_sweep("monotonic", {sweep_ports}, exhaustive, samples, seed, sweep_out);
      std::cerr << "sweep: pick one of --benes, --clos, --monotonic\n";
      return kExitUsage;
    }
    if (render->parsed()) return run_render(render_in, render_routes, render_out);
  } catch (const cnet::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const cnet::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}
