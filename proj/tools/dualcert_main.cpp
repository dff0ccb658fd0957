// Command-line front end: generate instances, certify critical points,
// tabulate certificate files.
//
// Exit codes: 0 certified/ok, 1 certificate failed, 2 input error,
// 3 numerical precondition failure.

#include <glob.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "dualcert/certify.hpp"
#include "dualcert/dual.hpp"
#include "dualcert/instance.hpp"
#include "dualcert/primal.hpp"
#include "dualcert/rng.hpp"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCertificateFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitNumericalError = 3;

std::string shortest(double v) { return nlohmann::json(v).dump(); }

std::string format_g(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

Eigen::VectorXd parse_x_init(const std::string& text, Eigen::Index n) {
  if (text == "zero") return Eigen::VectorXd::Zero(n);
  if (text.rfind("random:", 0) == 0) {
    std::uint64_t seed = 0;
    try {
      seed = std::stoull(text.substr(7));
    } catch (const std::exception&) {
      throw dualcert::ParseError("--x-init", "random:SEED requires an integer seed");
    }
    dualcert::SampleRng rng(seed, /*stream=*/7, /*index=*/0);
    return rng.normal_vector(n);
  }
  std::vector<double> entries;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      entries.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw dualcert::ParseError("--x-init", "expected zero, random:SEED or a comma list");
    }
  }
  if (static_cast<Eigen::Index>(entries.size()) != n)
    throw dualcert::ParseError("--x-init", "list has " + std::to_string(entries.size()) +
                                               " entries, instance dimension is " +
                                               std::to_string(n));
  return Eigen::Map<Eigen::VectorXd>(entries.data(), static_cast<Eigen::Index>(entries.size()));
}

void print_summary(const dualcert::Certificate& cert) {
  auto onoff = [](bool b) { return b ? "true" : "false"; };
  std::cout << "instance     : "
            << (cert.instance_name.empty() ? "(unnamed)" : cert.instance_name) << "  digest "
            << cert.instance_digest.substr(0, 12) << "...\n";
  std::cout << "case         : " << dualcert::to_string(cert.case_label) << "\n";
  std::cout << "J(x0)        : " << format_g(cert.primal.value) << "\n";
  std::cout << "J*           : " << format_g(cert.dual_objective) << "\n";
  std::cout << "gap          : abs " << format_g(cert.gap_abs) << "   rel "
            << format_g(cert.gap_rel) << "\n";
  std::cout << "stationarity : " << format_g(cert.dual_stationarity) << "\n";
  std::cout << "K            : " << format_g(cert.dual.K)
            << (cert.K_overridden ? " (override)" : " (auto)") << "  margins: K*I+A "
            << format_g(cert.regularization.margin_quadratic) << ", anchor box "
            << format_g(cert.regularization.margin_anchor_box) << ", concavity "
            << format_g(cert.regularization.margin_concavity) << "\n";
  std::cout << "hessian      : " << dualcert::to_string(cert.primal.hessian_class)
            << "  lambda_min " << format_g(cert.primal.hessian_lambda_min) << "  lambda_max "
            << format_g(cert.primal.hessian_lambda_max) << "\n";
  std::cout << "memberships  : A+* " << onoff(cert.membership.in_Aplus) << " (margin "
            << format_g(cert.membership.margin_Aplus) << ")   A-* "
            << onoff(cert.membership.in_Aminus) << " (margin "
            << format_g(cert.membership.margin_Aminus) << ")   B* "
            << onoff(cert.membership.in_Bstar) << " (margin "
            << format_g(cert.membership.margin_Bstar) << ")   M_pd "
            << onoff(cert.membership.M_pd) << " (margin " << format_g(cert.membership.margin_M)
            << ")\n";
  if (cert.sampling.empty()) {
    std::cout << "sampling     : (none for this case)\n";
  } else {
    bool first = true;
    for (const auto& rec : cert.sampling) {
      std::cout << (first ? "sampling     : " : "               ") << rec.check << "  checked "
                << rec.checked << "  violations " << rec.violations << "  worst margin "
                << format_g(rec.worst_margin);
      if (rec.skipped > 0) std::cout << "  skipped " << rec.skipped;
      if (rec.newton_failures > 0) std::cout << "  newton_failures " << rec.newton_failures;
      std::cout << "\n";
      first = false;
    }
  }
  std::cout << "legendre     : L1 " << format_g(cert.legendre.L1) << "  L2 "
            << format_g(cert.legendre.L2) << "  L3 " << format_g(cert.legendre.L3)
            << "  (skipped " << cert.legendre.skipped << ")\n";
  if (!cert.diagnostic.empty()) std::cout << "diagnostic   : " << cert.diagnostic << "\n";
  std::cout << "passed       : " << onoff(cert.passed) << "\n";
}

int run_gen(std::uint64_t seed, Eigen::Index n, Eigen::Index N, const std::string& case_name,
            const std::string& out_path) {
  const auto target = dualcert::case_target_from_string(case_name);
  const auto inst = dualcert::generate_random(seed, n, N, target);
  dualcert::save_instance_file(inst, out_path);
  std::cout << dualcert::instance_digest(inst) << "  " << out_path << "\n";
  return kExitOk;
}

int run_certify(const std::string& instance_path, const std::string& x_init_text,
                const std::string& k_text, const dualcert::CertifyConfig& base_cfg,
                const std::string& out_path) {
  const auto inst = dualcert::load_instance_file(instance_path);
  dualcert::CertifyConfig cfg = base_cfg;
  if (k_text != "auto") {
    try {
      cfg.K_override = std::stod(k_text);
    } catch (const std::exception&) {
      throw dualcert::ParseError("--K", "expected auto or a number");
    }
  }
  const Eigen::VectorXd x_init = parse_x_init(x_init_text, inst.dim);
  const dualcert::Certificate cert = dualcert::certify(inst, x_init, cfg);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw dualcert::ParseError(out_path, "cannot open file for writing");
  out << dualcert::save_certificate(cert);
  out.close();
  print_summary(cert);
  return cert.passed ? kExitOk : kExitCertificateFailed;
}

struct ReportRow {
  std::string file;
  std::string case_label;
  bool passed = false;
  double gap_rel = 0.0;
  double dual_stationarity = 0.0;
  double margin_Aplus = 0.0;
  double margin_Aminus = 0.0;
  double margin_Bstar = 0.0;
  double margin_M = 0.0;
  long violations = 0;
};

int run_report(const std::string& pattern, const std::string& format) {
  glob_t matches{};
  std::vector<std::string> files;
  if (glob(pattern.c_str(), 0, nullptr, &matches) == 0) {
    for (std::size_t i = 0; i < matches.gl_pathc; ++i) files.emplace_back(matches.gl_pathv[i]);
  }
  globfree(&matches);
  if (files.empty()) std::cerr << "warning: no certificate files match \"" << pattern << "\"\n";

  std::vector<ReportRow> rows;
  for (const auto& file : files) {
    std::ifstream in(file);
    if (!in) throw dualcert::ParseError(file, "cannot open file");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw dualcert::ParseError(file, e.what());
    }
    try {
      ReportRow row;
      row.file = file;
      row.case_label = doc.at("case_label").get<std::string>();
      row.passed = doc.at("passed").get<bool>();
      row.gap_rel = doc.at("gap_rel").get<double>();
      row.dual_stationarity = doc.at("dual_stationarity").get<double>();
      const auto& mem = doc.at("membership");
      row.margin_Aplus = mem.at("margin_Aplus").get<double>();
      row.margin_Aminus = mem.at("margin_Aminus").get<double>();
      row.margin_Bstar = mem.at("margin_Bstar").get<double>();
      row.margin_M = mem.at("margin_M").get<double>();
      for (const auto& rec : doc.at("sampling")) row.violations += rec.at("violations").get<long>();
      rows.push_back(std::move(row));
    } catch (const nlohmann::json::exception& e) {
      throw dualcert::ParseError(file, e.what());
    }
  }

  const std::vector<std::string> header = {"file",          "case",          "passed",
                                           "gap_rel",       "stationarity",  "margin_Aplus",
                                           "margin_Aminus", "margin_Bstar",  "margin_M",
                                           "violations"};
  auto row_cells = [](const ReportRow& r) {
    return std::vector<std::string>{r.file,
                                    r.case_label,
                                    r.passed ? "true" : "false",
                                    shortest(r.gap_rel),
                                    shortest(r.dual_stationarity),
                                    shortest(r.margin_Aplus),
                                    shortest(r.margin_Aminus),
                                    shortest(r.margin_Bstar),
                                    shortest(r.margin_M),
                                    std::to_string(r.violations)};
  };

  if (format == "csv") {
    for (std::size_t i = 0; i < header.size(); ++i)
      std::cout << header[i] << (i + 1 < header.size() ? "," : "\n");
    for (const auto& row : rows) {
      const auto cells = row_cells(row);
      for (std::size_t i = 0; i < cells.size(); ++i)
        std::cout << cells[i] << (i + 1 < cells.size() ? "," : "\n");
    }
    return kExitOk;
  }

  std::vector<std::size_t> widths(header.size());
  std::vector<std::vector<std::string>> table;
  table.push_back(header);
  for (const auto& row : rows) table.push_back(row_cells(row));
  for (const auto& row : table)
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], row[i].size());
  for (const auto& row : table) {
    for (std::size_t i = 0; i < row.size(); ++i)
      std::cout << std::left << std::setw(static_cast<int>(widths[i]) + 2) << row[i];
    std::cout << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"duality certificates for quartic-quadratic functionals"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "generate a random problem instance");
  std::uint64_t gen_seed = 0;
  long gen_n = 0, gen_N = 0;
  std::string gen_case = "unbiased";
  std::string gen_out;
  gen->add_option("--seed", gen_seed, "generator seed")->required();
  gen->add_option("--n", gen_n, "primal dimension")
      ->required()
      ->check(CLI::Range(1l, std::numeric_limits<long>::max()));
  gen->add_option("--N", gen_N, "number of quartic terms")
      ->required()
      ->check(CLI::Range(1l, std::numeric_limits<long>::max()));
  gen->add_option("--case", gen_case, "target case bias")
      ->check(CLI::IsMember({"convex_at_root", "global_min", "local_max", "unbiased"}));
  gen->add_option("--out", gen_out, "output instance path")->required();

  // certify
  auto* cert = app.add_subcommand("certify", "find a critical point and certify it");
  std::string cert_instance, cert_x_init = "zero", cert_K = "auto", cert_out;
  dualcert::CertifyConfig cfg;
  cert->add_option("--instance", cert_instance, "instance document path")->required();
  cert->add_option("--x-init", cert_x_init, "zero | random:SEED | comma list");
  cert->add_option("--K", cert_K, "auto | fixed value");
  cert->add_option("--r", cfg.r, "primal ball radius (default 0.05*(1+|x0|))")
      ->check(CLI::NonNegativeNumber);
  cert->add_option("--r1", cfg.r1, "v* ball radius (default 0.05*(1+|v*|))")
      ->check(CLI::NonNegativeNumber);
  cert->add_option("--r2", cfg.r2, "multiplier ball radius (default 0.1*(1+|v0*|_inf))")
      ->check(CLI::NonNegativeNumber);
  cert->add_option("--samples", cfg.samples, "Monte Carlo samples per check")
      ->check(CLI::NonNegativeNumber);
  cert->add_option("--seed", cfg.seed, "sampling seed");
  cert->add_option("--gap-tol", cfg.gap_tol, "relative gap tolerance");
  cert->add_option("--stat-tol", cfg.stat_tol, "dual stationarity tolerance");
  cert->add_option("--multistart", cfg.multistart, "restarts for global-min evidence")
      ->check(CLI::NonNegativeNumber);
  cert->add_option("--out", cert_out, "output certificate path")->required();

  // report
  auto* rep = app.add_subcommand("report", "tabulate certificate files");
  std::string rep_glob, rep_format = "text";
  rep->add_option("--certs", rep_glob, "glob of certificate files")->required();
  rep->add_option("--format", rep_format, "text | csv")
      ->check(CLI::IsMember({"text", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInputError;
  }

  try {
    if (gen->parsed()) return run_gen(gen_seed, gen_n, gen_N, gen_case, gen_out);
    if (cert->parsed()) return run_certify(cert_instance, cert_x_init, cert_K, cfg, cert_out);
    if (rep->parsed()) return run_report(rep_glob, rep_format);
  } catch (const dualcert::PreconditionError& e) {
    std::cerr << "numerical precondition failure: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const dualcert::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const dualcert::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInputError;
  }
  return kExitInputError;
}
