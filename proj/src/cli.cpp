#include "advdiff/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <json.hpp>
#include <ostream>

#include "advdiff/acceptance.hpp"
#include "advdiff/assembly.hpp"
#include "advdiff/solve.hpp"
#include "advdiff/stencils.hpp"
#include "advdiff/verify.hpp"

namespace advdiff {

namespace {

using json = nlohmann::ordered_json;

// 17 significant digits round-trip doubles exactly.
std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

BoundaryCondition parse_bc(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::InvalidArgument,
                "boundary condition must look like dirichlet:VALUE or "
                "neumann:VALUE, got '" + text + "'");
  }
  const std::string kind = text.substr(0, colon);
  double value = 0.0;
  try {
    value = std::stod(text.substr(colon + 1));
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidArgument,
                "bad boundary value in '" + text + "'");
  }
  if (kind == "dirichlet") return BoundaryCondition::dirichlet(value);
  if (kind == "neumann") return BoundaryCondition::neumann(value);
  throw Error(ErrorCode::InvalidArgument,
              "boundary kind must be dirichlet or neumann, got '" + kind + "'");
}

std::vector<Formulation> selected_formulations(const std::string& selector) {
  if (selector == "all") {
    return {Formulation::Galerkin, Formulation::ArtificialDiffusion,
            Formulation::WeightedVariational};
  }
  return {parse_formulation(selector)};
}

int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  if (path == "-") return body(out);
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    err << "cannot open output file '" << path << "'\n";
    return 2;
  }
  return body(file);
}

bool homogeneous_dirichlet(const Problem& problem) {
  return problem.bc_left().kind == BcKind::Dirichlet &&
         problem.bc_right().kind == BcKind::Dirichlet &&
         problem.bc_left().value == 0.0 && problem.bc_right().value == 0.0;
}

json config_echo(const RunConfig& cfg) {
  json echo;
  echo["command"] = cfg.command;
  if (cfg.command == "solve" || cfg.command == "stencil") {
    echo["v"] = cfg.v;
    echo["k"] = cfg.k;
  }
  if (cfg.command == "solve" || cfg.command == "sweep") {
    echo["f"] = cfg.f;
  }
  if (cfg.command != "verify") {
    echo["n"] = cfg.n;
  }
  if (cfg.command == "solve" || cfg.command == "sweep") {
    echo["formulation"] = cfg.formulation;
  }
  if (cfg.command == "sweep") {
    echo["ratios"] = cfg.ratios;
  }
  if (cfg.command == "solve") {
    echo["bc_left"] = cfg.bc_left;
    echo["bc_right"] = cfg.bc_right;
  }
  echo["format"] = cfg.format;
  echo["output"] = cfg.output;
  return echo;
}

int cmd_solve(const RunConfig& cfg, std::ostream& sink) {
  const Problem problem =
      validate({cfg.v, cfg.k, cfg.f, 0.0, 1.0}, parse_bc(cfg.bc_left),
               parse_bc(cfg.bc_right));
  const Mesh1D mesh = build_uniform(0.0, 1.0, cfg.n);
  const std::vector<Formulation> forms = selected_formulations(cfg.formulation);
  const bool with_exact = homogeneous_dirichlet(problem);

  std::vector<Eigen::VectorXd> u;
  u.reserve(forms.size());
  for (Formulation form : forms) {
    u.push_back(solve(problem, mesh, form).values);
  }
  Eigen::VectorXd exact(mesh.n_nodes());
  if (with_exact) {
    for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
      exact(j) = exact_solution(cfg.v, cfg.k, cfg.f, mesh.nodes()(j));
    }
  }

  if (cfg.format == "csv") {
    sink << "x";
    for (Formulation form : forms) sink << ",u_" << to_string(form);
    if (with_exact) {
      sink << ",u_exact";
      for (Formulation form : forms) sink << ",err_" << to_string(form);
    }
    sink << "\n";
    for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
      sink << fmt17(mesh.nodes()(j));
      for (const auto& values : u) sink << "," << fmt17(values(j));
      if (with_exact) {
        sink << "," << fmt17(exact(j));
        for (const auto& values : u) {
          sink << "," << fmt17(values(j) - exact(j));
        }
      }
      sink << "\n";
    }
  } else {
    json root;
    root["version"] = kVersion;
    root["config"] = config_echo(cfg);
    json rows = json::array();
    for (Eigen::Index j = 0; j < mesh.n_nodes(); ++j) {
      json row;
      row["x"] = mesh.nodes()(j);
      for (size_t i = 0; i < forms.size(); ++i) {
        row["u_" + std::string(to_string(forms[i]))] = u[i](j);
      }
      if (with_exact) {
        row["u_exact"] = exact(j);
        for (size_t i = 0; i < forms.size(); ++i) {
          row["err_" + std::string(to_string(forms[i]))] = u[i](j) - exact(j);
        }
      }
      rows.push_back(std::move(row));
    }
    root["rows"] = std::move(rows);
    sink << root.dump(2) << "\n";
  }
  return 0;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& sink) {
  if (cfg.ratios.empty()) {
    throw Error(ErrorCode::InvalidArgument, "--ratios must be nonempty");
  }
  for (double ratio : cfg.ratios) {
    if (!std::isfinite(ratio) || ratio <= 0.0) {
      throw Error(ErrorCode::InvalidArgument,
                  "ratios must be finite and positive");
    }
  }
  const std::vector<Formulation> forms = selected_formulations(cfg.formulation);
  const Mesh1D mesh = build_uniform(0.0, 1.0, cfg.n);

  struct Row {
    double ratio, peclet, max_err, l2, asymmetry, condition;
    Formulation form;
  };
  std::vector<Row> rows;
  for (double ratio : cfg.ratios) {
    const Problem problem =
        validate({1.0, 1.0 / ratio, cfg.f, 0.0, 1.0},
                 BoundaryCondition::dirichlet(0.0),
                 BoundaryCondition::dirichlet(0.0));
    const double peclet =
        peclet_element(problem, 0.0, 1.0 / static_cast<double>(cfg.n));
    for (Formulation form : forms) {
      Row row{};
      row.ratio = ratio;
      row.peclet = peclet;
      row.form = form;
      const NodalSolution sol = solve(problem, mesh, form);
      row.max_err = nodal_exactness(problem, mesh, form);
      row.l2 = l2_error(problem, mesh, sol.values);
      row.asymmetry = vainberg_symmetry(problem, mesh, form).asymmetry;
      TriDiagSystem solved =
          form == Formulation::WeightedVariational
              ? build_weighted_difference_system(
                    problem, mesh, WeightFunction::build(problem, mesh))
              : build_system(problem, mesh, form);
      row.condition = condition_estimate(solved);
      rows.push_back(row);
    }
  }

  if (cfg.format == "csv") {
    sink << "ratio,formulation,peclet,max_nodal_error,l2_error,asymmetry,"
            "condition\n";
    for (const Row& row : rows) {
      sink << fmt17(row.ratio) << "," << to_string(row.form) << ","
           << fmt17(row.peclet) << "," << fmt17(row.max_err) << ","
           << fmt17(row.l2) << "," << fmt17(row.asymmetry) << ","
           << fmt17(row.condition) << "\n";
    }
  } else {
    json root;
    root["version"] = kVersion;
    root["config"] = config_echo(cfg);
    json arr = json::array();
    for (const Row& row : rows) {
      json r;
      r["ratio"] = row.ratio;
      r["formulation"] = to_string(row.form);
      r["peclet"] = row.peclet;
      r["max_nodal_error"] = row.max_err;
      r["l2_error"] = row.l2;
      r["asymmetry"] = row.asymmetry;
      r["condition"] = row.condition;
      arr.push_back(std::move(r));
    }
    root["rows"] = std::move(arr);
    sink << root.dump(2) << "\n";
  }
  return 0;
}

int cmd_stencil(const RunConfig& cfg, std::ostream& sink) {
  const Problem problem =
      validate({cfg.v, cfg.k, 1.0, 0.0, 1.0}, BoundaryCondition::dirichlet(0.0),
               BoundaryCondition::dirichlet(0.0));
  const Mesh1D mesh = build_uniform(0.0, 1.0, cfg.n);
  const double h = 1.0 / static_cast<double>(cfg.n);
  const double pe = peclet_element(problem, 0.0, h);
  const Eigen::Index mid = cfg.n / 2;

  struct Entry {
    Formulation form;
    StencilCoeffs closed;
    StencilCoeffs assembled;
  };
  std::vector<Entry> entries;
  const WeightFunction weight = WeightFunction::build(problem, mesh);
  for (Formulation form : {Formulation::Galerkin,
                           Formulation::ArtificialDiffusion,
                           Formulation::WeightedVariational}) {
    Entry entry;
    entry.form = form;
    switch (form) {
      case Formulation::Galerkin:
        entry.closed = galerkin_stencil(cfg.v, cfg.k, h);
        break;
      case Formulation::ArtificialDiffusion:
        entry.closed = optimal_stencil(cfg.v, cfg.k, h);
        break;
      case Formulation::WeightedVariational:
        entry.closed = gamma_stencil(cfg.v, cfg.k, h);
        break;
    }
    const Eigen::VectorXd scales =
        form == Formulation::WeightedVariational
            ? weighted_lumped_mass(problem, mesh, weight)
            : lumped_mass(mesh);
    const TriDiagSystem equil =
        row_equilibrate(assemble(problem, mesh, form, weight), scales);
    entry.assembled = {equil.sub(mid - 1), equil.diag(mid), equil.sup(mid),
                       form};
    entries.push_back(entry);
  }
  const double kb = kbar(cfg.v, cfg.k, h);
  const double coth_pe = cfg.v == 0.0
                             ? std::numeric_limits<double>::infinity()
                             : 1.0 / pe + cothm(pe);

  if (cfg.format == "csv") {
    sink << "row,c_left,c_center,c_right\n";
    for (const Entry& entry : entries) {
      sink << to_string(entry.form) << "_closed," << fmt17(entry.closed.left)
           << "," << fmt17(entry.closed.center) << ","
           << fmt17(entry.closed.right) << "\n";
      sink << to_string(entry.form) << "_assembled,"
           << fmt17(entry.assembled.left) << ","
           << fmt17(entry.assembled.center) << ","
           << fmt17(entry.assembled.right) << "\n";
    }
    sink << "kbar," << fmt17(kb) << ",,\n";
    sink << "coth_pe," << fmt17(coth_pe) << ",,\n";
  } else {
    json root;
    root["version"] = kVersion;
    root["config"] = config_echo(cfg);
    root["peclet"] = pe;
    root["kbar"] = kb;
    root["coth_pe"] = coth_pe;
    json arr = json::array();
    for (const Entry& entry : entries) {
      json r;
      r["formulation"] = to_string(entry.form);
      r["closed"] = {entry.closed.left, entry.closed.center,
                     entry.closed.right};
      r["assembled"] = {entry.assembled.left, entry.assembled.center,
                        entry.assembled.right};
      arr.push_back(std::move(r));
    }
    root["stencils"] = std::move(arr);
    sink << root.dump(2) << "\n";
  }
  return 0;
}

int cmd_verify(const RunConfig& cfg, std::ostream& sink) {
  const AcceptanceOutcome outcome = run_acceptance_suite();
  if (cfg.format == "csv") {
    sink << "check,value,tolerance,pass\n";
    for (const CheckResult& check : outcome.checks) {
      sink << check.name << "," << fmt17(check.value) << ",";
      if (!std::isnan(check.tolerance)) sink << fmt17(check.tolerance);
      sink << "," << (check.pass ? "true" : "false") << "\n";
    }
  } else {
    json root;
    root["version"] = kVersion;
    root["config"] = config_echo(cfg);
    json arr = json::array();
    for (const CheckResult& check : outcome.checks) {
      json r;
      r["check"] = check.name;
      r["value"] = check.value;
      if (std::isnan(check.tolerance)) {
        r["tolerance"] = nullptr;
      } else {
        r["tolerance"] = check.tolerance;
      }
      r["pass"] = check.pass;
      arr.push_back(std::move(r));
    }
    root["checks"] = std::move(arr);
    sink << root.dump(2) << "\n";
  }
  return outcome.checks_pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "1D steady advection-diffusion finite elements: classical Galerkin, "
      "optimal artificial diffusion, and the exponentially weighted "
      "formulation, with a cross-verification suite."};
  app.set_config("--config", "", "Read options from a key = value file");
  app.require_subcommand(1);

  RunConfig cfg;

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Solve on [0,1] and write per-node columns");
  solve_cmd->add_option("--v", cfg.v, "Velocity")->required();
  solve_cmd->add_option("--k", cfg.k, "Diffusivity")->required();
  solve_cmd->add_option("--f", cfg.f, "Forcing")->capture_default_str();
  solve_cmd->add_option("--n", cfg.n, "Element count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  solve_cmd->add_option("--formulation", cfg.formulation,
                        "galerkin|artificial|weighted|all")
      ->capture_default_str();
  solve_cmd->add_option("--bc-left", cfg.bc_left,
                        "dirichlet:VALUE or neumann:VALUE")
      ->capture_default_str();
  solve_cmd->add_option("--bc-right", cfg.bc_right,
                        "dirichlet:VALUE or neumann:VALUE")
      ->capture_default_str();

  CLI::App* sweep_cmd = app.add_subcommand(
      "sweep", "Error/symmetry/conditioning table over v/k ratios");
  sweep_cmd->add_option("--ratios", cfg.ratios, "v/k ratios")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--f", cfg.f, "Forcing")->capture_default_str();
  sweep_cmd->add_option("--n", cfg.n, "Element count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--formulation", cfg.formulation,
                        "galerkin|artificial|weighted|all")
      ->capture_default_str();

  CLI::App* stencil_cmd = app.add_subcommand(
      "stencil", "Closed-form and assembly-derived difference coefficients");
  stencil_cmd->add_option("--v", cfg.v, "Velocity")->required();
  stencil_cmd->add_option("--k", cfg.k, "Diffusivity")->required();
  stencil_cmd->add_option("--n", cfg.n, "Element count (h = 1/n)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "Run the full verification suite");

  std::string verify_format = "json";
  for (CLI::App* sub : {solve_cmd, sweep_cmd, stencil_cmd, verify_cmd}) {
    sub->add_option("--output", cfg.output, "Output path, '-' = stdout")
        ->capture_default_str();
    if (sub == verify_cmd) {
      sub->add_option("--format", verify_format, "csv|json")
          ->capture_default_str()
          ->check(CLI::IsMember({"csv", "json"}));
    } else {
      sub->add_option("--format", cfg.format, "csv|json")
          ->capture_default_str()
          ->check(CLI::IsMember({"csv", "json"}));
    }
  }

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.push_back("advdiff1d");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  argv.reserve(storage.size());
  for (const std::string& s : storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 2;
  }

  try {
    if (solve_cmd->parsed()) {
      cfg.command = "solve";
      return with_output(cfg.output, out, err,
                         [&](std::ostream& sink) { return cmd_solve(cfg, sink); });
    }
    if (sweep_cmd->parsed()) {
      cfg.command = "sweep";
      return with_output(cfg.output, out, err,
                         [&](std::ostream& sink) { return cmd_sweep(cfg, sink); });
    }
    if (stencil_cmd->parsed()) {
      cfg.command = "stencil";
      return with_output(cfg.output, out, err, [&](std::ostream& sink) {
        return cmd_stencil(cfg, sink);
      });
    }
    cfg.command = "verify";
    cfg.format = verify_format;
    return with_output(cfg.output, out, err,
                       [&](std::ostream& sink) { return cmd_verify(cfg, sink); });
  } catch (const Error& e) {
    err << e.what() << "\n";
    return 2;
  }
}

}  // namespace advdiff
