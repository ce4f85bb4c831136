#include "wyner/cli.hpp"

#include "wyner/converse.hpp"
#include "wyner/dofcalc.hpp"
#include "wyner/schemes.hpp"
#include "wyner/simulator.hpp"
#include "wyner/tridiag.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

namespace wyner {

namespace {

struct VerificationFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct InstanceOpts {
  int K = 1, tl = 0, tr = 0, rl = 0, rr = 0;
  std::string topology = "sym";
  std::string alpha;
  double power = 1.0;
  std::string instance;  // JSON file
};

struct Instance {
  NetworkParams params;
  Topology topology = Topology::Symmetric;
  std::optional<Alpha> alpha;
  std::optional<ChannelModel> model;  // set when gains are known
};

void add_instance_flags(CLI::App* app, InstanceOpts& o) {
  app->add_option("--K", o.K, "number of users")->check(CLI::PositiveNumber);
  app->add_option("--tl", o.tl, "transmitter cooperation to the left")->check(CLI::NonNegativeNumber);
  app->add_option("--tr", o.tr, "transmitter cooperation to the right")->check(CLI::NonNegativeNumber);
  app->add_option("--rl", o.rl, "receiver cooperation to the left")->check(CLI::NonNegativeNumber);
  app->add_option("--rr", o.rr, "receiver cooperation to the right")->check(CLI::NonNegativeNumber);
  app->add_option("--topology", o.topology, "asym or sym");
  app->add_option("--alpha", o.alpha, "cross gain: decimal, p/q or root:p:k");
  app->add_option("--power", o.power, "per-transmitter power");
  app->add_option("--instance", o.instance, "instance JSON file (overrides the flags)");
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput("bad JSON in " + path + ": " + e.what());
  }
}

Instance resolve(const InstanceOpts& o) {
  Instance inst;
  if (!o.instance.empty()) {
    nlohmann::json j = read_json_file(o.instance);
    if (j.contains("gains") && j["gains"].value("kind", "") == "equal") {
      auto& a = j["gains"]["alpha"];
      Alpha al = a.is_string() ? Alpha::parse(a.get<std::string>()) : Alpha::of(a.get<double>());
      if (a.is_string()) {
        j["gains"]["label"] = a.get<std::string>();
        a = al.value;
      } else if (j["gains"].contains("label")) {
        al = Alpha::parse(j["gains"]["label"].get<std::string>());
      }
      inst.alpha = al;
    }
    inst.params = params_from_json(j);
    inst.topology = topology_from_string(j.value("topology", std::string("symmetric")));
    if (j.contains("gains")) inst.model = model_from_json(j);
    if (!o.alpha.empty()) inst.alpha = Alpha::parse(o.alpha);
    return inst;
  }
  inst.params.K = o.K;
  inst.params.t_left = o.tl;
  inst.params.t_right = o.tr;
  inst.params.r_left = o.rl;
  inst.params.r_right = o.rr;
  inst.params.power = o.power;
  inst.params.validate();
  inst.topology = topology_from_string(o.topology);
  if (!o.alpha.empty()) {
    inst.alpha = Alpha::parse(o.alpha);
    inst.model = build_channel(inst.params, inst.topology,
                               CrossGainAssignment::equal(inst.alpha->value, inst.alpha->label()));
  }
  return inst;
}

const ChannelModel& need_model(const Instance& inst) {
  if (!inst.model) throw InvalidInput("--alpha (or an instance file with gains) is required");
  return *inst.model;
}

const Alpha& need_alpha(const Instance& inst) {
  if (!inst.alpha) throw InvalidInput("--alpha is required for this command");
  return *inst.alpha;
}

nlohmann::json instance_json(const Instance& inst) {
  nlohmann::json j = to_json(inst.params);
  j["topology"] = to_string(inst.topology);
  if (inst.alpha) j["alpha"] = inst.alpha->label();
  return j;
}

std::vector<int> parse_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InvalidInput("bad index list: " + s);
    }
  }
  return out;
}

// Largest certified lower-bound plan for a symmetric instance without symmetric side information.
TransmissionPlan best_lb_plan(const NetworkParams& p, const ChannelModel& m) {
  std::optional<TransmissionPlan> best;
  for (const char* lb : {"LB1", "LB2", "LB3", "LB4"}) {
    try {
      TransmissionPlan pl = sym_general_plan(p, lb);
      if (!certify_plan(pl, m).pass) continue;
      if (!best || pl.claimed_dof > best->claimed_dof) best = pl;
    } catch (const NotApplicable&) {
    }
  }
  if (!best) throw NotApplicable("no lower-bound plan certifies here");
  return *best;
}

struct PlanOpts {
  std::string family = "auto";
  std::string silence;
  bool claim_full = false;
};

std::vector<TransmissionPlan> build_plans(const Instance& inst, const PlanOpts& po) {
  const NetworkParams& p = inst.params;
  if (inst.topology == Topology::Asymmetric) {
    if (po.family == "auto" || po.family == "asym") return {asym_plan(p)};
    if (po.family == "fair") return fair_time_sharing_plan(p);
    if (po.family == "silence") return {asym_plan_from_silenced(p, parse_list(po.silence), "custom")};
    throw InvalidInput("unknown asymmetric plan family: " + po.family);
  }
  if (po.family == "auto") {
    if (symmetric_si(p)) return {sym_symmetric_si_plan(p, need_alpha(inst))};
    return {best_lb_plan(p, need_model(inst))};
  }
  if (po.family == "symmetric-si") return {sym_symmetric_si_plan(p, need_alpha(inst))};
  if (po.family == "silence")
    return {sym_pair_silencing_plan(p, need_alpha(inst), parse_list(po.silence), "custom",
                                    po.claim_full)};
  if (po.family.rfind("LB", 0) == 0) return {sym_general_plan(p, po.family)};
  throw InvalidInput("unknown symmetric plan family: " + po.family);
}

struct ConverseOpts {
  std::string family = "asym";
  int trials = 100;
  double tol = 1e-8;
  bool theta4_prose = false, table_theta5 = false, show = false;
};

GeniePartition build_genie(const Instance& inst, const ConverseOpts& co) {
  const Alpha& a = need_alpha(inst);
  if (co.family == "asym") {
    if (inst.topology != Topology::Asymmetric) throw InvalidInput("asym genie needs --topology asym");
    return build_asym_genie(inst.params, a.value);
  }
  if (inst.topology != Topology::Symmetric) throw InvalidInput("this genie needs --topology sym");
  if (co.family == "ub1") {
    BoundOptions o;
    o.theta4_prose = co.theta4_prose;
    return build_sym_genie_ub1(inst.params, a.value, o);
  }
  if (co.family == "ub2") return build_sym_genie_ub2(inst.params, a, co.table_theta5);
  if (co.family == "offset") return build_offset_genie(inst.params, a.value);
  throw InvalidInput("unknown genie family: " + co.family);
}

nlohmann::ordered_json compact_interval(const DofInterval& d) {
  nlohmann::ordered_json j;
  j["lower"] = d.lower;
  j["upper"] = d.upper;
  j["exact"] = d.exact();
  return j;
}

DofInterval interval_for(const Instance& inst, const BoundOptions& opt) {
  if (inst.topology == Topology::Asymmetric) {
    ChannelModel m;
    m.params = inst.params;
    m.topology = inst.topology;
    return dof_interval(m, inst.alpha, opt);
  }
  if (inst.model && !inst.model->equal_gains()) return dof_interval(*inst.model, std::nullopt, opt);
  return sym_dof_interval(inst.params, inst.alpha, opt);
}

// ---- sweep ------------------------------------------------------------------

struct SweepRow {
  std::vector<std::string> cells;
  bool ok = true;
};

template <class T>
std::vector<T> list_field(const nlohmann::json& spec, const char* key, std::vector<T> dflt) {
  if (!spec.contains(key)) return dflt;
  const auto& v = spec.at(key);
  if (v.is_array()) return v.get<std::vector<T>>();
  return {v.get<T>()};
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

SweepRow sweep_one(const Instance& inst, const std::vector<std::string>& checks, int trials) {
  SweepRow row;
  for (const auto& c : checks) {
    try {
      if (c == "mg") {
        DofInterval d = interval_for(inst, {});
        row.cells.push_back(std::to_string(d.lower));
        row.cells.push_back(std::to_string(d.upper));
      } else if (c == "certify") {
        TransmissionPlan pl = build_plans(inst, {}).front();
        CertReport r = certify_plan(pl, need_model(inst));
        row.cells.push_back(pl.family);
        row.cells.push_back(std::to_string(r.certified_dof));
        row.cells.push_back(r.pass ? "true" : "false");
        row.ok = row.ok && r.pass;
      } else if (c == "converse") {
        ConverseOpts co;
        co.family = inst.topology == Topology::Asymmetric ? "asym" : "ub2";
        GeniePartition g;
        try {
          g = build_genie(inst, co);
        } catch (const NotApplicable&) {
          if (co.family == "asym") throw;
          co.family = "ub1";
          g = build_genie(inst, co);
        }
        ConverseReport r = verify_reconstruction(g, need_model(inst), trials);
        const bool ok = r.max_abs_error <= co.tol && r.entropy_ok && r.structural_ok;
        row.cells.push_back(co.family);
        row.cells.push_back(std::to_string(r.bound));
        row.cells.push_back(fmt(r.max_abs_error));
        row.cells.push_back(ok ? "true" : "false");
        row.ok = row.ok && ok;
      } else {
        throw InvalidInput("unknown check: " + c);
      }
    } catch (const NotApplicable& e) {
      const int width = c == "mg" ? 2 : c == "certify" ? 3 : 4;
      for (int i = 0; i < width; ++i) row.cells.push_back("NA");
    }
  }
  return row;
}

int default_jobs() {
  if (const char* env = std::getenv("WYNERDOF_JOBS")) {
    try {
      int j = std::stoi(env);
      if (j > 0) return j;
    } catch (const std::exception&) {
    }
  }
  return 1;
}

int run_sweep(const std::string& spec_path, int jobs, int trials, std::ostream& out) {
  const nlohmann::json spec = read_json_file(spec_path);
  std::vector<int> Ks, tls, trs, rls, rrs;
  std::vector<std::string> alphas, checks;
  std::string topo;
  try {
    Ks = list_field<int>(spec, "K", {});
    tls = list_field<int>(spec, "tl", {0});
    trs = list_field<int>(spec, "tr", {0});
    rls = list_field<int>(spec, "rl", {0});
    rrs = list_field<int>(spec, "rr", {0});
    checks = list_field<std::string>(spec, "checks", {"mg"});
    topo = spec.value("topology", std::string("sym"));
    if (spec.contains("alpha")) {
      const auto& a = spec.at("alpha");
      for (const auto& x : a.is_array() ? a : nlohmann::json::array({a}))
        alphas.push_back(x.is_string() ? x.get<std::string>() : Alpha::of(x.get<double>()).label());
    }
  } catch (const nlohmann::json::exception& e) {
    throw InvalidInput(std::string("bad sweep spec: ") + e.what());
  }
  if (Ks.empty()) throw InvalidInput("sweep spec needs K");
  if (alphas.empty()) alphas.push_back("");

  std::vector<InstanceOpts> grid;
  for (int K : Ks)
    for (int tl : tls)
      for (int tr : trs)
        for (int rl : rls)
          for (int rr : rrs)
            for (const auto& a : alphas) {
              InstanceOpts o;
              o.K = K;
              o.tl = tl;
              o.tr = tr;
              o.rl = rl;
              o.rr = rr;
              o.alpha = a;
              o.topology = topo;
              grid.push_back(o);
            }
  // resolve up front so bad input is reported before any work
  std::vector<Instance> insts;
  for (const auto& o : grid) insts.push_back(resolve(o));

  std::vector<SweepRow> rows(insts.size());
  std::vector<std::string> errors(insts.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i = next++; i < insts.size(); i = next++) {
      try {
        rows[i] = sweep_one(insts[i], checks, trials);
      } catch (const std::exception& e) {
        errors[i] = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < std::max(1, jobs); ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw InvalidInput(e);

  out << "index,topology,K,tl,tr,rl,rr,alpha";
  for (const auto& c : checks) {
    if (c == "mg") out << ",mg_lower,mg_upper";
    if (c == "certify") out << ",plan_family,certified_dof,certify_pass";
    if (c == "converse") out << ",genie_family,genie_bound,max_abs_error,converse_pass";
  }
  out << '\n';
  bool ok = true;
  for (size_t i = 0; i < rows.size(); ++i) {
    const auto& g = grid[i];
    out << i << ',' << topo << ',' << g.K << ',' << g.tl << ',' << g.tr << ',' << g.rl << ','
        << g.rr << ',' << g.alpha;
    for (const auto& c : rows[i].cells) out << ',' << c;
    out << '\n';
    ok = ok && rows[i].ok;
  }
  return ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Degrees of freedom of cognitive Wyner-type interference networks"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  InstanceOpts io;
  PlanOpts po;
  ConverseOpts co;
  std::string format = "json", csv_format = "csv";
  std::uint64_t seed = 1;
  BoundOptions bopt;

  auto* mg = app.add_subcommand("mg", "multiplexing gain interval");
  add_instance_flags(mg, io);
  auto* bounds = app.add_subcommand("bounds", "all lower and upper bounds with applicability");
  add_instance_flags(bounds, io);
  for (auto* s : {mg, bounds}) {
    s->add_flag("--theta4-prose", bopt.theta4_prose, "use the +1 threshold variant for UB1");
    s->add_flag("--theta5-proof", bopt.theta5_proof, "use the construction threshold for UB2/UB3");
  }
  bounds->add_option("--format", format, "json or table")->check(CLI::IsMember({"json", "table"}));

  int root_p = 1;
  auto* roots = app.add_subcommand("roots", "real roots of det H_p(alpha)");
  roots->add_option("--p", root_p, "order")->required()->check(CLI::PositiveNumber);

  auto* plan = app.add_subcommand("plan", "achievability plan");
  add_instance_flags(plan, io);
  std::string plan_file;
  auto* certify = app.add_subcommand("certify", "certify a plan against a channel");
  add_instance_flags(certify, io);
  certify->add_option("--plan", plan_file, "plan JSON file (otherwise built from the flags)");
  auto* simulate = app.add_subcommand("simulate", "sum-rate sweep of a plan");
  add_instance_flags(simulate, io);
  for (auto* s : {plan, certify, simulate}) {
    s->add_option("--family", po.family, "auto, asym, fair, symmetric-si, LB1..LB4, silence");
    s->add_option("--silence", po.silence, "comma-separated silenced indices for --family silence");
    s->add_flag("--claim-full", po.claim_full, "claim every block at full size");
  }
  double pmin = 1e3, pmax = 1e14;
  int points = 12;
  simulate->add_option("--pmin", pmin);
  simulate->add_option("--pmax", pmax);
  simulate->add_option("--points", points)->check(CLI::Range(2, 10000));
  simulate->add_option("--format", csv_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* converse = app.add_subcommand("converse", "build a genie partition and verify it");
  add_instance_flags(converse, io);
  auto* entropy = app.add_subcommand("entropy", "noise condition of a genie partition");
  add_instance_flags(entropy, io);
  for (auto* s : {converse, entropy}) {
    s->add_option("--family", co.family, "asym, ub1, ub2 or offset")
        ->check(CLI::IsMember({"asym", "ub1", "ub2", "offset"}));
    s->add_flag("--theta4-prose", co.theta4_prose);
    s->add_flag("--table-theta5", co.table_theta5);
    s->add_flag("--show-genie", co.show, "include the partition in the output");
  }
  converse->add_option("--trials", co.trials)->check(CLI::PositiveNumber);
  converse->add_option("--tol", co.tol);
  converse->add_option("--seed", seed);

  int L = 2;
  std::string alpha_star = "root:3:1";
  int emin = 3, emax = 12;
  double offP = 1e14;
  auto* offset = app.add_subcommand("offset", "power-offset growth near a critical alpha");
  offset->add_option("--L", L)->check(CLI::PositiveNumber);
  offset->add_option("--alpha-star", alpha_star);
  offset->add_option("--exp-min", emin, "smallest k in |alpha - alpha*| = 2^-k");
  offset->add_option("--exp-max", emax);
  offset->add_option("--P", offP);
  offset->add_option("--format", csv_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  std::string spec_path;
  int jobs = default_jobs(), sweep_trials = 20;
  auto* sweep = app.add_subcommand("sweep", "run checks over a parameter grid");
  sweep->add_option("--spec", spec_path, "sweep spec JSON file")->required();
  sweep->add_option("--jobs", jobs, "worker threads (default from WYNERDOF_JOBS)")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--trials", sweep_trials)->check(CLI::PositiveNumber);

  int rc_K = 20, rc_trials = 200;
  std::string rc_topology = "sym", rc_alpha;
  auto* rcheck = app.add_subcommand("random-check", "rank of principal blocks under random gains");
  rcheck->add_option("--K", rc_K)->check(CLI::PositiveNumber);
  rcheck->add_option("--topology", rc_topology);
  rcheck->add_option("--trials", rc_trials)->check(CLI::NonNegativeNumber);
  rcheck->add_option("--seed", seed);
  rcheck->add_option("--alpha", rc_alpha, "check one equal-gain channel instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*mg) {
      out << compact_interval(interval_for(resolve(io), bopt)).dump() << '\n';
      return 0;
    }
    if (*bounds) {
      const Instance inst = resolve(io);
      const DofInterval d = interval_for(inst, bopt);
      if (format == "table") {
        out << "interval " << d.lower << ' ' << d.upper << (d.exact() ? " exact" : "") << '\n';
        for (const auto& b : d.bounds)
          out << b.label << ' ' << b.value << ' ' << (b.applicable ? "applicable" : "n/a")
              << (b.reason.empty() ? "" : " (" + b.reason + ")") << '\n';
      } else {
        nlohmann::json j = to_json(d);
        j["instance"] = instance_json(inst);
        out << j.dump() << '\n';
      }
      return 0;
    }
    if (*roots) {
      out << to_json(critical_roots(root_p)).dump() << '\n';
      return 0;
    }
    if (*plan) {
      const auto plans = build_plans(resolve(io), po);
      if (plans.size() == 1) {
        out << to_json(plans.front()).dump() << '\n';
      } else {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : plans) arr.push_back(to_json(p));
        out << arr.dump() << '\n';
      }
      return 0;
    }
    if (*certify) {
      Instance inst;
      std::vector<TransmissionPlan> plans;
      if (!plan_file.empty()) {
        TransmissionPlan pl = plan_from_json(read_json_file(plan_file));
        InstanceOpts o = io;
        o.K = pl.params.K;
        o.tl = pl.params.t_left;
        o.tr = pl.params.t_right;
        o.rl = pl.params.r_left;
        o.rr = pl.params.r_right;
        o.topology = to_string(pl.topology);
        inst = resolve(o);
        plans.push_back(pl);
      } else {
        inst = resolve(io);
        plans = build_plans(inst, po);
      }
      const ChannelModel& m = need_model(inst);
      bool ok = true;
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& pl : plans) {
        CertReport r = certify_plan(pl, m);
        nlohmann::json j = to_json(r);
        j["family"] = pl.family;
        j["claimed_dof"] = pl.claimed_dof;
        arr.push_back(j);
        ok = ok && r.pass;
      }
      out << (arr.size() == 1 ? arr[0] : arr).dump() << '\n';
      return ok ? 0 : 1;
    }
    if (*simulate) {
      const Instance inst = resolve(io);
      const ChannelModel& m = need_model(inst);
      const auto powers = log_powers(pmin, pmax, points);
      std::vector<RateCurve> curves;
      for (const auto& pl : build_plans(inst, po)) curves.push_back(rate_curve(pl, m, powers));
      if (csv_format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& c : curves) {
          nlohmann::json pts = nlohmann::json::array();
          for (const auto& p : c.points) pts.push_back({{"P", p.P}, {"sum_rate_nats", p.rate}});
          arr.push_back({{"plan_id", c.plan_id}, {"slope", slope_estimate(c)}, {"points", pts}});
        }
        out << arr.dump() << '\n';
      } else {
        write_rate_csv(out, curves);
      }
      return 0;
    }
    if (*converse || *entropy) {
      const Instance inst = resolve(io);
      GeniePartition g = build_genie(inst, co);
      const ChannelModel& m = need_model(inst);
      if (*entropy) {
        const EntropyReport e = genie_entropy_check(g, m);
        nlohmann::json j = {{"ok", e.ok}, {"min_eigenvalue", e.min_eigenvalue},
                            {"bound", mac_bound_value(g)}};
        if (co.show) j["partition"] = to_json(g);
        out << j.dump() << '\n';
        return e.ok ? 0 : 1;
      }
      const ConverseReport r = verify_reconstruction(g, m, co.trials, co.tol, seed);
      nlohmann::json j = to_json(r);
      if (co.show) j["partition"] = to_json(g);
      out << j.dump() << '\n';
      return (r.structural_ok && r.entropy_ok && r.max_abs_error <= co.tol) ? 0 : 1;
    }
    if (*offset) {
      if (emin > emax) throw InvalidInput("--exp-min must not exceed --exp-max");
      const Alpha a = Alpha::parse(alpha_star);
      std::vector<double> deltas;
      for (int k = emin; k <= emax; ++k) deltas.push_back(std::ldexp(1.0, -k));
      const OffsetResult r = offset_experiment(L, a.value, deltas, offP);
      if (csv_format == "json") {
        nlohmann::json pts = nlohmann::json::array();
        for (auto [al, y] : r.points) pts.push_back({{"alpha", al}, {"offset_proxy", y}});
        out << nlohmann::json{{"alpha_star", r.alpha_star},
                              {"multiplicity", r.multiplicity},
                              {"fitted_nu", r.fitted_nu},
                              {"increasing", r.increasing},
                              {"points", pts}}
                   .dump()
            << '\n';
      } else {
        write_offset_csv(out, r);
      }
      return 0;
    }
    if (*sweep) return run_sweep(spec_path, jobs, sweep_trials, out);
    if (*rcheck) {
      const Topology t = topology_from_string(rc_topology);
      if (!rc_alpha.empty()) {
        NetworkParams p;
        p.K = rc_K;
        const ChannelModel m = build_channel(p, t, CrossGainAssignment::equal(Alpha::parse(rc_alpha).value));
        const int f = first_rank_failure(m, std::min(rc_K, 12));
        out << nlohmann::json{{"K", rc_K}, {"alpha", rc_alpha}, {"first_failing_size", f}}.dump()
            << '\n';
        return f == 0 ? 0 : 1;
      }
      const RankTrialReport r = random_gain_rank_trials(rc_K, t, rc_trials, seed);
      nlohmann::json fails = nlohmann::json::array();
      for (auto [s, size] : r.failing) fails.push_back({{"seed", s}, {"size", size}});
      out << nlohmann::json{{"trials", r.trials}, {"failures", r.failures},
                            {"max_size", r.max_size}, {"failing", fails}}
                 .dump()
          << '\n';
      return r.failures == 0 ? 0 : 1;
    }
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const NotApplicable& e) {
    err << "not applicable: " << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace wyner
