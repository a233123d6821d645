#include "hyperbolic/cli/app.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

#include "hyperbolic/cli/experiments.hpp"
#include "hyperbolic/cli/generators.hpp"
#include "hyperbolic/cli/reports.hpp"
#include "hyperbolic/errors.hpp"
#include "hyperbolic/interlace.hpp"
#include "hyperbolic/mixedforms.hpp"
#include "hyperbolic/oracle_json.hpp"
#include "hyperbolic/polyoracle.hpp"
#include "hyperbolic/scaling.hpp"

namespace hyperbolic::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  std::uint64_t seed = 0;
  std::optional<double> tol;
  int max_iters = 10000;
  std::string format = "json";
  int parallelism = 1;
  std::string out_path;

  double tol_or(double fallback) const { return tol.value_or(fallback); }
};

// Inline JSON when the argument starts with '{' or '[', a file path otherwise.
json load_document(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  std::string text;
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    std::ifstream in(arg);
    if (!in) throw InputError("cannot open \"" + arg + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    text = buf.str();
  }
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError("malformed JSON in \"" + arg + "\": " + e.what());
  }
  // Generator output wraps the instance.
  if (doc.is_object() && doc.contains("instance") && doc.contains("generator")) return doc.at("instance");
  return doc;
}

struct TupleInput {
  HyperbolicOracle oracle;
  PointTuple tuple;
  std::optional<int> matrix_size;
};

TupleInput load_tuple(const std::string& tuple_arg, const std::string& oracle_arg) {
  TupleDocument t = tuple_from_json(load_document(tuple_arg));
  if (!oracle_arg.empty())
    return {oracle_from_json(load_document(oracle_arg)), std::move(t.tuple), t.matrix_size};
  if (!t.matrix_size) throw InputError("a points tuple needs --oracle");
  return {HyperbolicOracle::symmetric_matrices(*t.matrix_size), std::move(t.tuple), t.matrix_size};
}

Point load_direction(const HyperbolicOracle& oracle, const std::string& arg) {
  if (arg.empty()) return oracle.direction();
  return point_from_json(load_document(arg));
}

std::vector<double> load_vector(const std::string& arg) {
  const Point p = point_from_json(load_document(arg));
  return {p.data(), p.data() + p.size()};
}

struct PairInput {
  MonicPolynomial q;
  Polynomial r;
};

PairInput load_pair(const std::string& arg) {
  const json doc = load_document(arg);
  if (!doc.is_object() || !doc.contains("q") || !doc.contains("r"))
    throw InputError("pair document needs \"q\" and \"r\"");
  return {monic_from_json(doc.at("q")), polynomial_from_json(doc.at("r"))};
}

Triple load_triple(const std::string& arg) {
  const auto v = load_vector(arg);
  if (v.size() != 3) throw InputError("expected three numbers");
  return {v[0], v[1], v[2]};
}

std::vector<double> default_grid() {
  std::vector<double> grid;
  for (int i = -8; i <= 8; ++i) grid.push_back(0.25 * i);
  return grid;
}

json tuple_output(const PointTuple& x, const std::optional<int>& matrix_size) {
  if (!matrix_size) return tuple_to_json(x);
  std::vector<Matrix> mats;
  for (const auto& p : x.points) mats.push_back(point_to_matrix(p, *matrix_size));
  return matrices_to_json(mats);
}

SymmetricConvexFunction parse_function(const std::string& name, int k) {
  SymmetricConvexFunction f;
  f.k = k;
  if (name == "topk_sum") f.kind = SymmetricConvexKind::topk_sum;
  else if (name == "neg_bottomk_sum") f.kind = SymmetricConvexKind::neg_bottomk_sum;
  else if (name == "max") f.kind = SymmetricConvexKind::max;
  else if (name == "sum_abs") f.kind = SymmetricConvexKind::sum_abs;
  else throw InputError("unknown symmetric convex function \"" + name + "\"");
  return f;
}

class Application {
 public:
  Application(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

  int run(std::vector<std::string> args) {
    CLI::App app{"Hyperbolic polynomial toolkit: mixed forms, capacity, scaling, interlacing."};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--seed", cfg_.seed, "Random seed")->envname("HYPERBOLIC_SEED");
    app.add_option("--tol", cfg_.tol, "Tolerance override")->envname("HYPERBOLIC_TOL")->check(CLI::PositiveNumber);
    app.add_option("--max-iters", cfg_.max_iters, "Iteration budget")
        ->envname("HYPERBOLIC_MAX_ITERS")
        ->check(CLI::Range(1, 100000000));
    app.add_option("--format", cfg_.format, "Output format")
        ->envname("HYPERBOLIC_FORMAT")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--parallelism", cfg_.parallelism, "Worker threads for batch suites")
        ->envname("HYPERBOLIC_PARALLELISM")
        ->check(CLI::Range(1, 1024));
    app.add_option("--out", cfg_.out_path, "Write the report to a file instead of stdout");

    register_oracle_commands(app);
    register_mixed_commands(app);
    register_scaling_commands(app);
    register_interlace_commands(app);
    register_batch_commands(app);

    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::CallForAllHelp& e) {
      return app.exit(e, out_, err_);
    } catch (const CLI::ParseError& e) {
      app.exit(e, out_, err_);
      return kInputError;
    }
    if (!action_) return kInputError;
    try {
      return action_();
    } catch (const InputError& e) {
      err_ << "error: " << e.what() << '\n';
      return kInputError;
    } catch (const PreconditionError& e) {
      err_ << "error: precondition failed: " << e.what() << '\n';
      return kInputError;
    } catch (const BudgetError& e) {
      err_ << "error: budget exceeded: " << e.what() << '\n';
      return kInputError;
    } catch (const NonRealRootError& e) {
      err_ << "error: " << e.what() << " (root " << e.root().real() << (e.root().imag() < 0 ? "" : "+")
           << e.root().imag() << "i)\n";
      return kNegative;
    } catch (const json::exception& e) {
      err_ << "error: malformed document: " << e.what() << '\n';
      return kInputError;
    } catch (const std::exception& e) {
      err_ << "error: " << e.what() << '\n';
      return kUndetermined;
    }
  }

 private:
  void emit(const json& report) {
    const OutputFormat format = cfg_.format == "text" ? OutputFormat::text : OutputFormat::json;
    if (cfg_.out_path.empty()) {
      write_report(out_, report, format);
      return;
    }
    std::ofstream file(cfg_.out_path);
    if (!file) throw InputError("cannot write \"" + cfg_.out_path + "\"");
    write_report(file, report, format);
  }

  void warn_direction(const HyperbolicOracle& oracle, const Point& d) {
    if (near_degenerate_direction(oracle, d))
      err_ << "warning: p(d) < 1e-12; results against this direction are poorly conditioned\n";
  }

  template <class F>
  void on(CLI::App* sub, F&& f) {
    sub->callback([this, f = std::forward<F>(f)]() mutable { action_ = f; });
  }

  void register_oracle_commands(CLI::App& app) {
    auto s = std::make_shared<std::map<std::string, std::string>>();

    auto* eval = app.add_subcommand("eval", "Evaluate p at a point");
    eval->add_option("oracle", (*s)["oracle"], "Oracle document")->required();
    eval->add_option("point", (*s)["point"], "Point document")->required();
    on(eval, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["oracle"]));
      emit({{"value", evaluate(oracle, point_from_json(load_document((*s)["point"])))}});
      return kOk;
    });

    auto* restrict_cmd = app.add_subcommand("restrict", "Coefficients of t -> p(t d + x)");
    restrict_cmd->add_option("oracle", (*s)["r_oracle"])->required();
    restrict_cmd->add_option("point", (*s)["r_point"])->required();
    restrict_cmd->add_option("--direction", (*s)["r_dir"], "Direction d (default e)");
    on(restrict_cmd, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["r_oracle"]));
      const Point d = load_direction(oracle, (*s)["r_dir"]);
      const auto c = univariate_restriction(oracle, point_from_json(load_document((*s)["r_point"])), d);
      emit({{"coefficients", c.coefficients()}});
      return kOk;
    });

    auto* roots = app.add_subcommand("roots", "Roots of p(x - t d) = 0");
    roots->add_option("oracle", (*s)["ro_oracle"])->required();
    roots->add_option("point", (*s)["ro_point"])->required();
    roots->add_option("--direction", (*s)["ro_dir"], "Direction d (default e)");
    on(roots, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["ro_oracle"]));
      const Point d = load_direction(oracle, (*s)["ro_dir"]);
      warn_direction(oracle, d);
      const auto spec = roots_in_direction(oracle, point_from_json(load_document((*s)["ro_point"])), d,
                                           cfg_.tol_or(1e-8));
      emit({{"roots", spec.roots}});
      return kOk;
    });

    auto* trace = app.add_subcommand("trace", "Directional trace tr_d(x)");
    trace->add_option("oracle", (*s)["t_oracle"])->required();
    trace->add_option("point", (*s)["t_point"])->required();
    trace->add_option("--direction", (*s)["t_dir"], "Direction d (default e)");
    on(trace, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["t_oracle"]));
      const Point d = load_direction(oracle, (*s)["t_dir"]);
      warn_direction(oracle, d);
      emit({{"trace", trace_in_direction(oracle, point_from_json(load_document((*s)["t_point"])), d)}});
      return kOk;
    });

    auto* rank = app.add_subcommand("rank", "p-rank of a point");
    rank->add_option("oracle", (*s)["k_oracle"])->required();
    rank->add_option("point", (*s)["k_point"])->required();
    on(rank, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["k_oracle"]));
      emit({{"rank", p_rank(oracle, point_from_json(load_document((*s)["k_point"])), cfg_.tol_or(1e-9))}});
      return kOk;
    });

    auto* cone = app.add_subcommand("cone", "Cone membership of a point");
    cone->add_option("oracle", (*s)["c_oracle"])->required();
    cone->add_option("point", (*s)["c_point"])->required();
    on(cone, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["c_oracle"]));
      const auto c = cone_membership(oracle, point_from_json(load_document((*s)["c_point"])), cfg_.tol_or(1e-9));
      emit({{"membership", to_string(c)}});
      return kOk;
    });

    auto* hyp = app.add_subcommand("hyperbolicity", "Sampled hyperbolicity test in direction e");
    hyp->add_option("oracle", (*s)["h_oracle"])->required();
    samples_ = 100;
    hyp->add_option("--samples", samples_, "Number of random points")->check(CLI::PositiveNumber);
    on(hyp, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["h_oracle"]));
      const auto r = hyperbolicity_sample_test(oracle, samples_, cfg_.seed, cfg_.tol_or(1e-8));
      emit({{"verdict", r.verdict},
            {"counterexample", r.counterexample ? point_to_json(*r.counterexample) : json(nullptr)}});
      return r.verdict ? kOk : kNegative;
    });
    strings_.push_back(s);
  }

  void register_mixed_commands(CLI::App& app) {
    auto s = std::make_shared<std::map<std::string, std::string>>();
    const auto tuple_command = [&](const std::string& name, const std::string& help) {
      auto* sub = app.add_subcommand(name, help);
      sub->add_option("tuple", (*s)[name + ":tuple"], "Tuple document ({\"points\"} or {\"matrices\"})")->required();
      sub->add_option("--oracle", (*s)[name + ":oracle"], "Oracle document (implied for matrix tuples)");
      return sub;
    };
    const auto input = [s](const std::string& name) {
      return load_tuple((*s)[name + ":tuple"], (*s)[name + ":oracle"]);
    };

    on(tuple_command("mixed", "Mixed value by polarization"), [this, input] {
      const auto in = input("mixed");
      ProgressCallback progress;
      if (in.oracle.degree() >= 15)
        progress = [this](std::uint64_t done, std::uint64_t total) {
          if (done == total || done % (std::uint64_t{1} << 16) == 0)
            err_ << "progress: " << done << "/" << total << '\n';
        };
      const auto d = mixed_value_detail(in.oracle, in.tuple, progress);
      emit({{"value", d.value}, {"max_term", d.max_term}});
      return kOk;
    });

    on(tuple_command("support", "Support of Q and the Newton saturation check"), [this, input] {
      const auto in = input("support");
      const auto r = newton_saturation_check(in.oracle, in.tuple, cfg_.tol_or(1e-9));
      emit(to_json(r));
      return r.saturated ? kOk : kNegative;
    });

    on(tuple_command("af", "Alexandrov-Fenchel residual"), [this, input] {
      const auto in = input("af");
      const auto r = af_check(in.oracle, in.tuple);
      if (!r.inputs_nonnegative) err_ << "warning: tuple is not e-nonnegative; the inequality may fail\n";
      emit(to_json(r));
      return r.holds(cfg_.tol_or(1e-9)) ? kOk : kNegative;
    });

    auto* phi = app.add_subcommand("phi", "Coefficients and roots of phi_k");
    phi->add_option("oracle", (*s)["phi:oracle"])->required();
    phi->add_option("point", (*s)["phi:point"])->required();
    phi->add_option("--tail", (*s)["phi:tail"], "Tuple of n - k e-positive points");
    phi_k_ = 1;
    phi->add_option("--k", phi_k_, "Number of slots holding x + t e")->required();
    on(phi, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["phi:oracle"]));
      std::vector<Point> tail;
      if (!(*s)["phi:tail"].empty()) tail = tuple_from_json(load_document((*s)["phi:tail"])).tuple.points;
      const auto r = k_hyperbolic_check(oracle, point_from_json(load_document((*s)["phi:point"])), tail, phi_k_,
                                        cfg_.tol_or(1e-8));
      json report = {{"coefficients", r.phi.coefficients()}, {"real_rooted", r.real_rooted}};
      report["roots"] = r.roots ? json(r.roots->roots) : json(nullptr);
      report["discriminant"] = r.discriminant ? json(*r.discriminant) : json(nullptr);
      emit(report);
      return r.real_rooted ? kOk : kNegative;
    });

    auto* profile = app.add_subcommand("profile", "Log-concavity profile M(0..n)");
    profile->add_option("oracle", (*s)["pr:oracle"])->required();
    profile->add_option("x", (*s)["pr:x"])->required();
    profile->add_option("y", (*s)["pr:y"])->required();
    on(profile, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["pr:oracle"]));
      const auto m = log_concavity_profile(oracle, point_from_json(load_document((*s)["pr:x"])),
                                           point_from_json(load_document((*s)["pr:y"])));
      bool ok = true;
      const double tol = cfg_.tol_or(1e-9);
      for (std::size_t i = 1; i + 1 < m.size(); ++i)
        ok = ok && m[i] * m[i] >= m[i - 1] * m[i + 1] * (1.0 - tol);
      emit({{"profile", m}, {"log_concave", ok}});
      return ok ? kOk : kNegative;
    });
    strings_.push_back(s);
  }

  void register_scaling_commands(CLI::App& app) {
    auto s = std::make_shared<std::map<std::string, std::string>>();
    const auto tuple_command = [&](const std::string& name, const std::string& help) {
      auto* sub = app.add_subcommand(name, help);
      sub->add_option("tuple", (*s)[name + ":tuple"], "Tuple document")->required();
      sub->add_option("--oracle", (*s)[name + ":oracle"], "Oracle document (implied for matrix tuples)");
      return sub;
    };
    const auto input = [s](const std::string& name) {
      return load_tuple((*s)[name + ":tuple"], (*s)[name + ":oracle"]);
    };

    on(tuple_command("ds-defect", "Doubly-stochastic defect"), [this, input] {
      const auto in = input("ds-defect");
      const auto st = scaling_state(in.oracle, in.tuple);
      emit({{"defect", st.defect}, {"traces", st.traces}});
      return kOk;
    });

    on(tuple_command("hs-map", "One Hyperbolic Sinkhorn step"), [this, input] {
      const auto in = input("hs-map");
      emit(tuple_output(hs_map(in.oracle, in.tuple), in.matrix_size));
      return kOk;
    });

    auto* sinkhorn = tuple_command("sinkhorn", "Hyperbolic Sinkhorn iteration");
    threshold_ = 1e-10;
    sinkhorn->add_option("--threshold", threshold_, "Defect threshold")->check(CLI::PositiveNumber);
    on(sinkhorn, [this, input] {
      const auto in = input("sinkhorn");
      ScalingOptions opt;
      opt.max_iters = cfg_.max_iters;
      opt.threshold = threshold_;
      opt.rank_tol = cfg_.tol_or(1e-9);
      const auto r = hsi_run(in.oracle, in.tuple, opt);
      json report = to_json(r);
      if (in.matrix_size && r.final_state.tuple.size() > 0)
        report["final_tuple"] = tuple_output(r.final_state.tuple, in.matrix_size)["matrices"];
      emit(report);
      if (r.verdict == CapacityVerdict::positive) return kOk;
      return r.verdict == CapacityVerdict::zero ? kNegative : kUndetermined;
    });

    on(tuple_command("capacity", "Capacity by projected gradient descent"), [this, input] {
      const auto in = input("capacity");
      CapacityOptions opt;
      opt.tol = cfg_.tol_or(1e-8);
      opt.max_iters = cfg_.max_iters;
      const auto r = capacity(in.oracle, in.tuple, opt);
      if (r.status == CapacityStatus::zero_capacity && !r.rank_witness)
        err_ << "warning: optimizer diverged towards zero although the rank condition holds\n";
      emit(to_json(r));
      if (r.status == CapacityStatus::converged) return kOk;
      return r.status == CapacityStatus::zero_capacity ? kNegative : kUndetermined;
    });

    on(tuple_command("edmonds-rado", "Generalized Edmonds-Rado rank condition"), [this, input] {
      const auto in = input("edmonds-rado");
      const auto r = edmonds_rado_check(in.oracle, in.tuple, cfg_.tol_or(1e-9));
      emit(to_json(r));
      return r.holds ? kOk : kNegative;
    });

    on(tuple_command("vdw", "Ratio M(X) / Cap(X)"), [this, input] {
      const auto in = input("vdw");
      CapacityOptions opt;
      opt.max_iters = cfg_.max_iters;
      const auto cap = capacity(in.oracle, in.tuple, opt);
      if (cap.status == CapacityStatus::zero_capacity) throw PreconditionError("capacity is zero");
      const double m = mixed_value(in.oracle, in.tuple);
      emit({{"ratio", m / cap.value}, {"mixed_value", m}, {"capacity", cap.value}});
      return kOk;
    });

    auto* conc = tuple_command("concavity", "Capacity concavity along a convex combination");
    conc->add_option("--comps", (*s)["conc:comps"], "Array of compositions")->required();
    conc->add_option("--weights", (*s)["conc:weights"], "Convex weights")->required();
    conc->add_flag("--mixed", mixed_form_, "Check the refined mixed-value bound instead");
    on(conc, [this, input, s] {
      const auto in = input("concavity");
      const json comps_doc = load_document((*s)["conc:comps"]);
      if (!comps_doc.is_array()) throw InputError("--comps must be an array of arrays");
      std::vector<Composition> comps;
      for (const auto& c : comps_doc) comps.push_back(Composition{c.get<std::vector<int>>()});
      const auto weights = load_vector((*s)["conc:weights"]);
      CapacityOptions opt;
      opt.max_iters = cfg_.max_iters;
      const auto r = mixed_form_ ? mixed_value_concavity_check(in.oracle, in.tuple, comps, weights)
                                 : capacity_concavity_check(in.oracle, in.tuple, comps, weights, opt);
      emit({{"holds", r.holds}, {"lhs", r.lhs}, {"rhs", r.rhs}});
      return r.holds ? kOk : kNegative;
    });

    auto* ineq = app.add_subcommand("ineq23", "Q(1 / grad Q) <= Q^{-(n-1)}");
    ineq->add_option("oracle", (*s)["i:oracle"])->required();
    ineq->add_option("alpha", (*s)["i:alpha"])->required();
    on(ineq, [this, s] {
      const auto oracle = oracle_from_json(load_document((*s)["i:oracle"]));
      const auto r = inequality23_check(oracle, point_from_json(load_document((*s)["i:alpha"])), cfg_.tol_or(1e-9));
      emit({{"lhs", r.lhs}, {"rhs", r.rhs}, {"holds", r.holds}});
      return r.holds ? kOk : kNegative;
    });

    auto* cs = app.add_subcommand("classical-sinkhorn", "Row-then-column matrix scaling");
    cs->add_option("matrix", (*s)["cs:matrix"], "Positive square matrix")->required();
    sinkhorn_iters_ = 1;
    cs->add_option("--iters", sinkhorn_iters_, "Number of row/column rounds")->check(CLI::NonNegativeNumber);
    on(cs, [this, s] {
      const Matrix a = matrix_from_json(load_document((*s)["cs:matrix"]));
      emit({{"matrix", matrix_to_json(classical_sinkhorn(a, sinkhorn_iters_))}});
      return kOk;
    });
    strings_.push_back(s);
  }

  void register_interlace_commands(CLI::App& app) {
    auto s = std::make_shared<std::map<std::string, std::string>>();

    auto* pair = app.add_subcommand("pair-test", "Obreschkoff residue test and sampled pencil test");
    pair->add_option("pair", (*s)["p:pair"], "Pair document {\"q\",\"r\"}")->required();
    num_dirs_ = 64;
    pair->add_option("--dirs", num_dirs_, "Sampled directions")->check(CLI::Range(3, 1000000));
    on(pair, [this, s] {
      const auto in = load_pair((*s)["p:pair"]);
      PairTestOptions opt;
      opt.tol = cfg_.tol_or(1e-8);
      const auto a = obreschkoff_pair_test(in.q, in.r, opt);
      const auto b = sampled_pencil_test(in.q, in.r, num_dirs_, opt.tol);
      const bool definite = a.verdict != PairVerdict::inconclusive && b.verdict != PairVerdict::inconclusive;
      const bool agree = !definite || a.verdict == b.verdict;
      json report = {{"obreschkoff", to_json(a)}, {"sampled", to_json(b)}, {"agree", agree}};
      PairVerdict verdict = a.verdict;
      if (!agree) {
        err_ << "warning: residue test and sampled pencil test disagree\n";
        verdict = PairVerdict::inconclusive;
      }
      report["verdict"] = to_string(verdict);
      const auto& witness = b.counterexample_direction ? b.counterexample_direction : a.counterexample_direction;
      report["counterexample"] = witness ? json::array({witness->first, witness->second}) : json(nullptr);
      emit(report);
      if (verdict == PairVerdict::hyperbolic) return kOk;
      return verdict == PairVerdict::not_hyperbolic ? kNegative : kUndetermined;
    });

    auto* pencil = app.add_subcommand("pencil", "Characteristic polynomial of x C_q + y C_r");
    pencil->add_option("pair", (*s)["pe:pair"])->required();
    pencil_x_ = 1.0;
    pencil_y_ = 0.0;
    pencil->add_option("--x", pencil_x_);
    pencil->add_option("--y", pencil_y_);
    on(pencil, [this, s] {
      const auto in = load_pair((*s)["pe:pair"]);
      const auto r = monic_partner(in.q, in.r);
      const auto c = pencil_char_poly(in.q, r, pencil_x_, pencil_y_);
      json report = {{"char_poly", c}};
      const auto roots = real_roots(Polynomial(c), RealRootOptions{cfg_.tol_or(1e-8), 1e-5, false});
      report["roots"] = roots.ok() ? json(roots.value().roots) : json(nullptr);
      emit(report);
      return roots.ok() ? kOk : kNegative;
    });

    auto* maj = app.add_subcommand("majorize", "Majorization, Lidskii and Corollary experiments");
    maj->add_option("--u", (*s)["m:u"], "Vector u (is u majorized by v?)");
    maj->add_option("--v", (*s)["m:v"], "Vector v");
    maj->add_option("--lidskii", (*s)["m:lidskii"], "Document {\"A\":matrix,\"B\":matrix}");
    maj->add_option("--corollary", (*s)["m:pair"], "Pair document for the pencil experiment");
    maj->add_option("--point", (*s)["m:point"], "(x, y, z)");
    maj->add_option("--delta", (*s)["m:delta"], "(delta_1, delta_2, delta_3)");
    maj->add_flag("--literal-shift", literal_shift_, "Shift P_{X+Delta} by delta_3 / K");
    maj->add_flag("--scale-sorted", scale_sorted_, "Scale the sorted roots without re-sorting");
    on(maj, [this, s] {
      auto& m = *s;
      MajorizationReport r;
      json report;
      if (!m["m:lidskii"].empty()) {
        const json doc = load_document(m["m:lidskii"]);
        const Matrix a = matrix_from_json(doc.at("A")), b = matrix_from_json(doc.at("B"));
        r = lidskii_experiment(a, b, cfg_.tol_or(1e-9) * (1.0 + a.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff()));
        report = to_json(r);
      } else if (!m["m:pair"].empty()) {
        if (m["m:point"].empty() || m["m:delta"].empty()) throw InputError("--corollary needs --point and --delta");
        const auto in = load_pair(m["m:pair"]);
        CorollaryOptions opt;
        opt.tol = cfg_.tol_or(1e-8);
        opt.literal_shift = literal_shift_;
        opt.ordering = scale_sorted_ ? OrdConvention::scale_sorted : OrdConvention::sort_after_scaling;
        const auto c = corollary_majorization_experiment(in.q, monic_partner(in.q, in.r), load_triple(m["m:point"]),
                                                         load_triple(m["m:delta"]), opt);
        r = c.majorization;
        report = to_json(c);
      } else {
        if (m["m:u"].empty() || m["m:v"].empty()) throw InputError("majorize needs --u and --v, --lidskii or --corollary");
        r = majorization_check(load_vector(m["m:u"]), load_vector(m["m:v"]), cfg_.tol_or(1e-9));
        report = to_json(r);
      }
      emit(report);
      return r.majorized ? kOk : kNegative;
    });

    auto* line = app.add_subcommand("line-convexity", "Convexity of root functionals along pencil lines");
    line->add_option("--q", (*s)["l:q"], "Monic polynomial for the derivative line");
    line->add_option("--pair", (*s)["l:pair"], "Pair document for the symmetric-convex line");
    line->add_option("--f", (*s)["l:f"], "topk_sum | neg_bottomk_sum | max | sum_abs");
    line->add_option("--grid", (*s)["l:grid"], "Grid of a values (default -2..2 step 0.25)");
    line_k_ = 1;
    line_b_ = 0.0;
    line_c_ = 1.0;
    line->add_option("--k", line_k_, "k for f_k / topk_sum / neg_bottomk_sum");
    line->add_option("--b", line_b_, "Shift b");
    line->add_option("--c", line_c_, "Shift slope c");
    on(line, [this, s] {
      auto& m = *s;
      const auto grid = m["l:grid"].empty() ? default_grid() : load_vector(m["l:grid"]);
      const double tol = cfg_.tol_or(1e-9);
      LineConvexityReport r;
      if (!m["l:q"].empty()) {
        r = derivative_line_convexity(monic_from_json(load_document(m["l:q"])), line_b_, line_c_, line_k_, grid, tol);
      } else if (!m["l:pair"].empty()) {
        const auto in = load_pair(m["l:pair"]);
        const auto f = parse_function(m["l:f"].empty() ? "max" : m["l:f"], line_k_);
        r = symmetric_convex_line_check(in.q, monic_partner(in.q, in.r), line_b_, line_c_, f, grid, tol);
      } else {
        throw InputError("line-convexity needs --q or --pair");
      }
      emit(to_json(r));
      bool ok = r.convex;
      for (const auto& flag : {r.min_at_zero, r.sum_constant, r.majorization_chain}) ok = ok && flag.value_or(true);
      return ok ? kOk : kNegative;
    });
    strings_.push_back(s);
  }

  void register_batch_commands(CLI::App& app) {
    auto s = std::make_shared<std::map<std::string, std::string>>();

    auto* gen = app.add_subcommand("gen", "Seeded instance generators");
    gen->add_option("kind", (*s)["g:kind"], "Generator kind")->required()->check(CLI::IsMember(generator_kinds()));
    gen_n_ = 3;
    gen->add_option("--n", gen_n_, "Size / degree")->check(CLI::Range(1, 24));
    gen->add_option("--param", gen_params_, "Generator parameter key=value (number, true/false)");
    on(gen, [this, s] {
      GeneratorSpec spec;
      spec.kind = (*s)["g:kind"];
      spec.n = gen_n_;
      for (const auto& kv : gen_params_) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw InputError("--param expects key=value");
        const std::string key = kv.substr(0, eq), value = kv.substr(eq + 1);
        try {
          spec.params[key] = json::parse(value);
        } catch (const json::parse_error&) {
          spec.params[key] = value;
        }
      }
      emit(generate(spec, cfg_.seed));
      return kOk;
    });

    auto* exp = app.add_subcommand("experiments", "Seeded batch property suites");
    exp->add_option("suite", (*s)["e:suite"], "Suite name")->required()->check(CLI::IsMember(suite_names()));
    trials_ = 0;
    exp->add_option("--trials", trials_, "Trial count (default: suite default)")->check(CLI::NonNegativeNumber);
    on(exp, [this, s] {
      SuiteConfig config;
      config.seed = cfg_.seed;
      config.tol = cfg_.tol_or(1e-9);
      config.max_iters = cfg_.max_iters;
      config.parallelism = cfg_.parallelism;
      config.trials = trials_;
      const auto summary = run_suite((*s)["e:suite"], config);
      emit(summary.to_json());
      return summary.failures == 0 ? kOk : kNegative;
    });
    strings_.push_back(s);
  }

  std::ostream& out_;
  std::ostream& err_;
  RunConfig cfg_;
  std::function<int()> action_;
  std::vector<std::shared_ptr<std::map<std::string, std::string>>> strings_;
  int samples_ = 100;
  int phi_k_ = 1;
  double threshold_ = 1e-10;
  bool mixed_form_ = false;
  int sinkhorn_iters_ = 1;
  int num_dirs_ = 64;
  double pencil_x_ = 1.0, pencil_y_ = 0.0;
  bool literal_shift_ = false, scale_sorted_ = false;
  int line_k_ = 1;
  double line_b_ = 0.0, line_c_ = 1.0;
  int gen_n_ = 3;
  std::vector<std::string> gen_params_;
  int trials_ = 0;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Application app(out, err);
  return app.run(args);
}

}  // namespace hyperbolic::cli
