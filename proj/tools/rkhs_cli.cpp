#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rkhs/error.hpp"
#include "rkhs/experiments.hpp"
#include "rkhs/json_io.hpp"
#include "rkhs/kernels.hpp"
#include "rkhs/mdm.hpp"
#include "rkhs/param_sequence.hpp"
#include "rkhs/transference.hpp"
#include "rkhs/verify.hpp"
#include "rkhs/worst_case.hpp"

namespace {

using rkhs::Error;
using rkhs::ErrorKind;
using rkhs::format_double;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::usage, "cannot open " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::usage, "cannot write " + path);
  out << text;
}

rkhs::Problem parse_problem(const std::string& name) {
  if (name == "int") return rkhs::Problem::integration;
  if (name == "approx") return rkhs::Problem::approximation;
  throw Error(ErrorKind::usage, "--problem must be int or approx");
}

rkhs::Family parse_family(const std::string& name) {
  if (name == "gauss" || name == "gaussian") return rkhs::Family::gaussian;
  if (name == "hermite") return rkhs::Family::hermite;
  throw Error(ErrorKind::usage, "family must be gauss or hermite, got \"" + name + "\"");
}

struct TransferArgs {
  std::string rule_path;
  std::vector<double> sigma;
  std::string problem = "int";
  std::string out;
};

int run_transfer(const TransferArgs& args) {
  const rkhs::Problem problem = parse_problem(args.problem);
  const rkhs::TransferConstants k = rkhs::TransferConstants::make(problem, args.sigma);
  const std::string text = read_file(args.rule_path);
  std::string twin_json;
  double error_gaussian = 0.0;
  double error_hermite = 0.0;
  double tail = 0.0;
  if (problem == rkhs::Problem::integration) {
    const rkhs::QuadratureRule rule = rkhs::json::parse_rule(text);
    const rkhs::QuadratureRule twin = rkhs::transfer_quadrature_to_hermite(rule, args.sigma);
    error_gaussian = rkhs::wce_integration(rule, k.gaussian_spec());
    error_hermite = rkhs::wce_integration(twin, k.hermite_spec());
    twin_json = rkhs::json::dump(twin);
  } else {
    const rkhs::SamplingMethod method = rkhs::json::parse_method(text);
    const rkhs::SpectralSystem gauss(k.gaussian_spec(), method.index_set);
    const rkhs::SpectralSystem herm(k.hermite_spec(), method.index_set);
    const rkhs::SamplingMethod twin = rkhs::transfer_sampling_to_hermite(method, gauss, herm);
    const rkhs::TruncatedError ea = rkhs::wce_approximation(method, gauss);
    const rkhs::TruncatedError eb = rkhs::wce_approximation(twin, herm);
    error_gaussian = ea.value;
    error_hermite = eb.value;
    tail = ea.tail_bound + k.gauss_prefactor * eb.tail_bound;
    twin_json = rkhs::json::dump(twin);
  }
  write_output(args.out, twin_json + "\n");
  std::ostream& report = args.out.empty() || args.out == "-" ? std::cerr : std::cout;
  report << "error_gaussian," << format_double(error_gaussian) << '\n'
         << "error_hermite," << format_double(error_hermite) << '\n'
         << "prefactor," << format_double(k.gauss_prefactor) << '\n'
         << "residual," << format_double(std::fabs(error_gaussian - k.gauss_prefactor * error_hermite))
         << '\n';
  if (problem == rkhs::Problem::approximation) report << "tail_bound," << format_double(tail) << '\n';
  return 0;
}

struct MdmArgs {
  std::string sigma_rule = "j^-1.5";
  std::string family = "gauss";
  std::vector<double> budgets;
  std::vector<double> dollar_table;
  std::size_t trunc = 100000;
  bool dedup_anchor = false;
};

int run_mdm(const MdmArgs& args) {
  const rkhs::InfiniteKernel kernel(parse_family(args.family),
                                    rkhs::SequenceRule::parse(args.sigma_rule));
  const rkhs::CostModel model =
      args.dollar_table.empty()
          ? rkhs::CostModel::dollar([](std::size_t m) { return 1.0 + static_cast<double>(m); }, "1+m")
          : rkhs::CostModel::dollar_table(args.dollar_table);
  rkhs::MdmOptions options;
  options.dedup_anchor = args.dedup_anchor;
  const auto rows = rkhs::mdm_run(kernel, args.budgets, model, args.trunc, options);
  std::cout << rkhs::mdm_run_csv(rows);
  std::vector<rkhs::CostErrorPair> pairs;
  for (const auto& row : rows) pairs.push_back({row.cost, row.error});
  try {
    const rkhs::DecayEstimate est = rkhs::decay_estimate(pairs);
    std::cerr << "decay exponent " << format_double(est.exponent) << ", intercept "
              << format_double(est.intercept) << ", points " << est.points_used << ", r^2 "
              << format_double(est.r_squared) << '\n';
  } catch (const Error& e) {
    std::cerr << "decay estimate unavailable: " << e.what() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case errors, transference and cubature on Gaussian and Hermite spaces"};
  app.require_subcommand(1);

  std::string kernel_path;
  std::string e0_problem = "int";
  auto* e0 = app.add_subcommand("e0", "Print the initial error of a kernel");
  e0->add_option("--kernel", kernel_path, "Kernel JSON file")->required();
  e0->add_option("--problem", e0_problem, "int or approx")->check(CLI::IsMember({"int", "approx"}));

  TransferArgs transfer_args;
  auto* transfer = app.add_subcommand("transfer", "Map a Gaussian-space rule or method to its Hermite twin");
  transfer->add_option("--rule", transfer_args.rule_path, "Rule (int) or method (approx) JSON file")
      ->required();
  transfer->add_option("--sigma", transfer_args.sigma, "Gaussian shape parameters")
      ->required()
      ->delimiter(',');
  transfer->add_option("--problem", transfer_args.problem, "int or approx")
      ->check(CLI::IsMember({"int", "approx"}));
  transfer->add_option("--out", transfer_args.out, "Twin JSON output (default stdout)");

  std::string space = "hermite";
  double param = 0.5;
  int n_max = 20;
  auto* univariate = app.add_subcommand("univariate-decay", "Errors of n-point Gauss-Hermite rules");
  univariate->add_option("--space", space, "gauss or hermite")->check(CLI::IsMember({"gauss", "hermite"}));
  univariate->add_option("--param", param, "sigma (gauss) or beta (hermite)")->required();
  univariate->add_option("--n-max", n_max, "Largest rule size")->required();

  std::vector<double> tensor_sigma;
  std::vector<double> eps_list;
  auto* tensor = app.add_subcommand("tensor-decay", "Product rules chosen from a target eps");
  tensor->add_option("--sigma", tensor_sigma, "Gaussian shape parameters")->required()->delimiter(',');
  tensor->add_option("--eps-list", eps_list, "Target bounds")->required()->delimiter(',');

  MdmArgs mdm_args;
  auto* mdm = app.add_subcommand("mdm-run", "Multivariate decomposition method over a budget sweep");
  mdm->add_option("--sigma-rule", mdm_args.sigma_rule, "\"j^-p\", \"r^j\", optionally scaled \"c*...\"");
  mdm->add_option("--family", mdm_args.family, "gauss or hermite")->check(CLI::IsMember({"gauss", "hermite"}));
  mdm->add_option("--budgets", mdm_args.budgets, "Cost budgets")->required()->delimiter(',');
  mdm->add_option("--dollar-table", mdm_args.dollar_table,
                  "$(0), $(1), ... (default $(m) = 1 + m)")
      ->delimiter(',');
  mdm->add_option("--trunc", mdm_args.trunc, "Coordinates kept when evaluating errors");
  mdm->add_flag("--dedup-anchor", mdm_args.dedup_anchor, "Merge the anchor rows into one");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run acceptance batteries");
  verify->add_option("--suite", suite, "transference, spectral, mehler, mdm or all")
      ->check(CLI::IsMember({"transference", "spectral", "mehler", "mdm", "all"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (*e0) {
      const rkhs::KernelSpec spec = rkhs::json::parse_kernel(read_file(kernel_path));
      std::cout << format_double(rkhs::kernels::initial_error(spec, parse_problem(e0_problem))) << '\n';
      return 0;
    }
    if (*transfer) return run_transfer(transfer_args);
    if (*univariate) {
      std::cout << rkhs::univariate_decay_csv(rkhs::univariate_decay(parse_family(space), param, n_max));
      return 0;
    }
    if (*tensor) {
      std::cout << rkhs::tensor_decay_csv(rkhs::tensor_decay(tensor_sigma, eps_list));
      return 0;
    }
    if (*mdm) return run_mdm(mdm_args);
    if (*verify) {
      bool all = true;
      for (int id : rkhs::verify::suite_criteria(suite)) {
        const rkhs::verify::CriterionResult result = rkhs::verify::run_criterion(id);
        std::cout << rkhs::verify::format(result) << std::endl;
        all &= result.passed;
      }
      return all ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << "rkhs: " << e.what() << '\n';
    return e.kind() == ErrorKind::usage ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << "rkhs: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
