#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "markovdim/cf.hpp"
#include "markovdim/dimension.hpp"
#include "markovdim/dimfun.hpp"
#include "markovdim/forbid.hpp"
#include "markovdim/plateau.hpp"
#include "markovdim/quadsurd.hpp"

using namespace markovdim;

namespace {

constexpr const char* kVersion = "markovdim 1.0.0";

#ifndef MARKOVDIM_DATA_DIR
#define MARKOVDIM_DATA_DIR "data"
#endif

// Exit-code contract: 0 success, 1 verification failure, 2 usage error,
// 3 budget exceeded.
enum ExitCode { kOk = 0, kVerifyFail = 1, kUsage = 2, kBudget = 3 };

std::string cache_key(const std::string& params) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](char c) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ULL;
  };
  for (char c : std::string(kVersion) + "|" + params) mix(c);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string cache_dir_from(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MARKOVDIM_CACHE")) return env;
  return {};
}

bool cache_load(const std::string& dir, const std::string& key,
                std::string& out) {
  if (dir.empty()) return false;
  std::ifstream in(dir + "/" + key + ".txt", std::ios::binary);
  if (!in) return false;
  std::ostringstream os;
  os << in.rdbuf();
  out = os.str();
  return true;
}

void cache_store(const std::string& dir, const std::string& key,
                 const std::string& content) {
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) {
    std::cerr << "warning: cannot create cache dir " << dir << "\n";
    return;
  }
  std::string tmp = dir + "/" + key + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << content;
  }
  std::filesystem::rename(tmp, dir + "/" + key + ".txt", ec);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
    if (!content.empty() && content.back() != '\n') std::cout << '\n';
  } else {
    std::ofstream out(out_path, std::ios::binary);
    out << content;
  }
}

std::string default_manifest() {
  return std::string(MARKOVDIM_DATA_DIR) + "/inequalities.manifest";
}

int report(const VerifyReport& rep, const std::string& label) {
  std::cout << label << ": " << (rep.ok ? "ok" : "FAILED") << " ("
            << rep.checked << " checks";
  if (!rep.ok) std::cout << ", " << rep.failures.size() << " failures";
  std::cout << ")\n";
  for (const auto& f : rep.failures) std::cout << "  " << f << "\n";
  return rep.ok ? kOk : kVerifyFail;
}

std::string gap_label(const GapInterval& g) {
  return "I_" + std::to_string(g.i) + "_" + std::to_string(g.j);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Certified bounds for the dimension function of the Markov and "
      "Lagrange spectra"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  std::string s_text = "3.2658", out_path, cache_flag, manifest, fw_file;
  int n = 12, m = 12, fw_index = -1, workers = 4;
  double tol = 1e-4, eps = 1e-3;
  std::string step_text = "0.0024", a_text, b_text;
  std::vector<int> gap_pair;
  bool appendix_fidelity = false;

  auto* cmd_forbid = app.add_subcommand(
      "forbid", "Forbidden-word search at a threshold (JSON)");
  cmd_forbid->add_option("--s", s_text, "threshold in (2.9, 3.4)")->required();
  cmd_forbid->add_option("--n", n, "window half-length");
  cmd_forbid->add_option("--out", out_path, "output file (default stdout)");
  cmd_forbid->add_option("--cache", cache_flag, "cache directory");

  auto* cmd_dim = app.add_subcommand(
      "dim", "Dimension enclosure for a forbidden set (JSON)");
  cmd_dim->add_option("--fw", fw_index, "plateau index 2..13 (use FW_i)");
  cmd_dim->add_option("--forbidden-file", fw_file,
                      "file with one forbidden word per line");
  cmd_dim->add_option("--m", m, "block depth");
  cmd_dim->add_option("--tol", tol, "bisection tolerance");
  cmd_dim->add_option("--out", out_path, "output file (default stdout)");
  cmd_dim->add_option("--cache", cache_flag, "cache directory");

  auto* cmd_sweep =
      app.add_subcommand("sweep", "Certified d(t) staircases over a grid (CSV)");
  cmd_sweep->add_option("--gap", gap_pair, "plateau pair i j (adjacent)")
      ->expected(2);
  cmd_sweep->add_option("--a", a_text, "interval start");
  cmd_sweep->add_option("--b", b_text, "interval end");
  cmd_sweep->add_option("--step", step_text, "grid step");
  cmd_sweep->add_option("--n", n, "window half-length");
  cmd_sweep->add_option("--m", m, "block depth");
  cmd_sweep->add_option("--tol", tol, "bisection tolerance");
  cmd_sweep->add_option("--out", out_path, "output file");
  cmd_sweep->add_option("--cache", cache_flag, "cache directory");
  cmd_sweep->add_option("--workers", workers, "parallel workers (advisory)");
  cmd_sweep->add_flag("--appendix-fidelity", appendix_fidelity,
                      "n=16, m=16, step=0.00005 (long-running)");

  auto* cmd_verify = app.add_subcommand(
      "verify", "Exact verification suites (exit 1 on any failure)");
  std::string what = "all";
  cmd_verify
      ->add_option("what", what,
                   "endpoints | inequalities | plateaux | order | all")
      ->check(CLI::IsMember(
          {"endpoints", "inequalities", "plateaux", "order", "all"}));
  cmd_verify->add_option("--manifest", manifest, "inequality manifest path");
  cmd_verify->add_option("--m", m, "block depth for the plateaux suite");
  cmd_verify->add_option("--tol", tol, "bisection tolerance");

  auto* cmd_checkpoints = app.add_subcommand(
      "checkpoints", "Certified checkpoint table over the gap intervals");
  cmd_checkpoints->add_option("--gap", gap_pair, "restrict to one pair i j")
      ->expected(2);
  cmd_checkpoints->add_option("--n", n, "window half-length");
  cmd_checkpoints->add_option("--m", m, "block depth");
  cmd_checkpoints->add_option("--step", step_text, "grid step");
  cmd_checkpoints->add_option("--tol", tol, "bisection tolerance");
  cmd_checkpoints->add_option("--workers", workers, "parallel workers (advisory)");
  cmd_checkpoints->add_flag("--appendix-fidelity", appendix_fidelity,
                            "n=16, m=16, step=0.00005 (long-running)");

  auto* cmd_asym =
      app.add_subcommand("asymptotic", "Lambert asymptotic of 1 - d near t_1");
  cmd_asym->add_option("--eps", eps, "epsilon in (0, 0.5)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e) == 0 ? kOk : kUsage;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (appendix_fidelity) {
      n = 16;
      m = 16;
      step_text = "0.00005";
    }
    const std::string cache_dir = cache_dir_from(cache_flag);

    if (cmd_forbid->parsed()) {
      std::string key = cache_key("forbid|" + s_text + "|" + std::to_string(n));
      std::string out;
      if (!cache_load(cache_dir, key, out)) {
        out = forbid_to_json(forbidden_words(parse_decimal(s_text), n));
        cache_store(cache_dir, key, out);
      }
      emit(out, out_path);
      return kOk;
    }

    if (cmd_dim->parsed()) {
      ForbiddenSet fs;
      std::string source;
      if (fw_index >= 0) {
        fs = plateau_by_index(fw_index).fw;
        source = "fw" + std::to_string(fw_index);
      } else if (!fw_file.empty()) {
        std::ifstream in(fw_file);
        if (!in) {
          std::cerr << "cannot open " << fw_file << "\n";
          return kUsage;
        }
        std::string line;
        std::vector<std::string> words;
        while (std::getline(in, line))
          if (!line.empty()) words.push_back(line);
        fs = ForbiddenSet::parse(words);
        std::ostringstream os;
        for (const auto& w : words) os << w << ";";
        source = os.str();
      } else {
        std::cerr << "dim: need --fw or --forbidden-file\n";
        return kUsage;
      }
      std::ostringstream params;
      params << "dim|" << source << "|" << m << "|" << tol;
      std::string key = cache_key(params.str()), out;
      if (!cache_load(cache_dir, key, out)) {
        out = enclosure_to_json(dim_enclosure(fs, m, tol));
        cache_store(cache_dir, key, out);
      }
      emit(out, out_path);
      return kOk;
    }

    if (cmd_sweep->parsed() || cmd_checkpoints->parsed()) {
      const mpq_class step = parse_decimal(step_text);
      std::vector<GapInterval> gaps;
      if (!gap_pair.empty()) {
        gaps.push_back(gap_interval(gap_pair[0], gap_pair[1]));
      } else if (cmd_sweep->parsed()) {
        if (a_text.empty() || b_text.empty()) {
          std::cerr << "sweep: need --gap I J or --a and --b\n";
          return kUsage;
        }
      } else {
        const auto& order = occurrence_order();
        for (std::size_t k = 0; k + 1 < order.size(); ++k)
          gaps.push_back(gap_interval(order[k], order[k + 1]));
      }

      if (cmd_sweep->parsed()) {
        mpq_class a, b;
        std::string label;
        if (!gaps.empty()) {
          const GapInterval& g = gaps[0];
          if (g.no_estimate_needed) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.4f", g.width());
            std::cout << "No estimate needed: width " << buf << " < 0.005\n";
            return kOk;
          }
          a = g.lo;
          b = g.hi;
          label = gap_label(g);
        } else {
          a = parse_decimal(a_text);
          b = parse_decimal(b_text);
        }
        std::ostringstream params;
        params << "sweep|" << a << "|" << b << "|" << step << "|" << n << "|"
               << m << "|" << tol;
        std::string key = cache_key(params.str()), csv;
        if (!cache_load(cache_dir, key, csv)) {
          csv = sweep_to_csv(sweep(a, b, step, n, m, tol));
          cache_store(cache_dir, key, csv);
        }
        if (out_path.empty() && !label.empty()) out_path = label + ".csv";
        emit(csv, out_path);
        return kOk;
      }

      // checkpoints: Appendix-shaped rows (interval, checkpoint, d_lower,
      // d_upper) over every gap that needs an estimate.
      std::printf("%-8s %-10s %-10s %-10s\n", "interval", "s", "d_lower",
                  "d_upper");
      for (const auto& g : gaps) {
        if (g.no_estimate_needed) {
          char buf[64];
          std::snprintf(buf, sizeof buf, "%.4f", g.width());
          std::printf("%-8s No estimate needed: width %s < 0.005\n",
                      gap_label(g).c_str(), buf);
          continue;
        }
        SweepResult sr = sweep(g.lo, g.hi, step, n, m, tol);
        for (std::size_t i = 0; i < sr.records.size(); ++i)
          std::printf("%-8s %-10.6f %-10.6f %-10.6f\n", gap_label(g).c_str(),
                      sr.records[i].s.get_d(), sr.lower_envelope[i],
                      sr.upper_envelope[i]);
      }
      return kOk;
    }

    if (cmd_verify->parsed()) {
      if (manifest.empty()) manifest = default_manifest();
      int rc = kOk;
      if (what == "endpoints" || what == "all")
        rc |= report(verify_endpoint_identities(), "endpoints");
      if (what == "inequalities" || what == "all")
        rc |= report(verify_inequalities(manifest), "inequalities");
      if (what == "order" || what == "all")
        rc |= report(verify_order(), "order");
      if (what == "plateaux" || what == "all") {
        VerifyReport rep;
        for (const auto& r : plateau_table()) {
          ++rep.checked;
          DimEnclosure e = dim_enclosure(r.fw, m, tol);
          mpq_class v = parse_decimal(r.plateau_value);
          if (!(mpq_class(2 * e.lo) <= v && v <= mpq_class(2 * e.hi))) {
            rep.ok = false;
            rep.failures.push_back(
                "P_" + std::to_string(r.index) + ": 2*dim enclosure [" +
                std::to_string(2 * e.lo) + ", " + std::to_string(2 * e.hi) +
                "] misses " + r.plateau_value);
          }
        }
        rc |= report(rep, "plateaux");
      }
      return rc;
    }

    if (cmd_asym->parsed()) {
      std::printf("%.12f\n", lambert_asymptotic(eps));
      return kOk;
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBudget;
  }
  return kUsage;
}
