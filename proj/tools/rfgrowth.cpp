// Batch front end: builds sequence tables, certifies the detection matrix,
// emits growth certificates, and runs the quotient-search algorithms.
// Exit codes: 0 success, 1 a checked property failed or nothing was found,
// 2 configuration/parse error, 3 table too shallow for the requested n,
// 4 no oracle available for the presentation.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rfgrowth/fp.hpp"
#include "rfgrowth/growth.hpp"
#include "rfgrowth/neumann.hpp"
#include "rfgrowth/rf.hpp"
#include "rfgrowth/sequences.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitConfig = 2;
constexpr int kExitShallow = 3;
constexpr int kExitNoOracle = 4;

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  }
};

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw rfg::ParseError("cannot open output file: " + out_path);
  out << content;
}

rfg::SequenceTable load_or_build_table(const std::string& table_path, const std::string& f_spec, unsigned K) {
  if (!table_path.empty()) {
    std::ifstream in(table_path);
    if (!in) throw rfg::ParseError("cannot open table file: " + table_path);
    nlohmann::json j = nlohmann::json::parse(in, nullptr, /*allow_exceptions=*/false);
    if (j.is_discarded()) throw rfg::ParseError("table file is not valid JSON: " + table_path);
    if (j.contains("table")) j = j["table"];  // accept full `sequences` output
    return rfg::table_from_json(j);
  }
  return rfg::build_table(rfg::GrowthFunction::parse(f_spec), K);
}

std::vector<unsigned> parse_radii(const std::vector<std::string>& specs) {
  std::vector<unsigned> out;
  for (const std::string& spec : specs) {
    std::stringstream ss(spec);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      if (tok.empty()) continue;
      size_t dots = tok.find("..");
      try {
        if (dots != std::string::npos) {
          unsigned a = static_cast<unsigned>(std::stoul(tok.substr(0, dots)));
          unsigned b = static_cast<unsigned>(std::stoul(tok.substr(dots + 2)));
          if (a < 1 || b < a) throw rfg::ParseError("bad radius range: " + tok);
          for (unsigned r = a; r <= b; ++r) out.push_back(r);
        } else {
          unsigned r = static_cast<unsigned>(std::stoul(tok));
          if (r < 1) throw rfg::ParseError("radius must be >= 1");
          out.push_back(r);
        }
      } catch (const std::logic_error&) {
        throw rfg::ParseError("bad radius token: " + tok);
      }
    }
  }
  if (out.empty()) throw rfg::ParseError("no radii requested");
  return out;
}

int cmd_sequences(const std::string& f_spec, unsigned K, const std::string& out_path) {
  Timer timer;
  rfg::GrowthFunction f = rfg::GrowthFunction::parse(f_spec);
  ordered_json j;
  j["command"] = "sequences";
  j["f"] = f.label();
  j["K"] = K;
  bool pass = false;
  try {
    rfg::SequenceTable t = rfg::build_table(f, K);
    rfg::ClauseReport report = rfg::verify_clauses(t, f);
    pass = report.all_pass();
    j["table"] = rfg::table_to_json(t);
    j["clauses"] = rfg::clause_report_to_json(report);
  } catch (const rfg::GrowthOverflow& e) {
    j["error"] = std::string("growth value not representable: ") + e.what();
  }
  j["elapsed_ms"] = timer.ms();
  write_output(out_path, j.dump(2) + "\n");
  return pass ? kExitOk : kExitCheckFailed;
}

int cmd_verify(const std::string& f_spec, unsigned K, const std::string& table_path, unsigned workers,
               const std::string& out_path) {
  Timer timer;
  rfg::SequenceTable t = load_or_build_table(table_path, f_spec, K);
  ordered_json matrix = ordered_json::array();
  bool diagonal = true;
  for (unsigned j = 1; j <= t.K; ++j) {
    rfg::STWord w = rfg::witness_word(j, t);
    std::vector<unsigned> detected = rfg::detecting_factors(w, t, workers);
    ordered_json row = ordered_json::array();
    for (unsigned k = 1; k <= t.K; ++k) {
      bool hit = std::find(detected.begin(), detected.end(), k) != detected.end();
      row.push_back(hit);
      if (hit != (j == k)) diagonal = false;
    }
    matrix.push_back(std::move(row));
  }
  ordered_json out;
  out["command"] = "verify";
  out["f"] = f_spec;
  out["K"] = t.K;
  out["matrix"] = std::move(matrix);
  out["diagonal_ok"] = diagonal;
  out["elapsed_ms"] = timer.ms();
  write_output(out_path, out.dump(2) + "\n");
  return diagonal ? kExitOk : kExitCheckFailed;
}

int cmd_certificate(const std::string& f_spec, unsigned K, const std::string& table_path, const std::string& n_text,
                    const std::string& out_path) {
  Timer timer;
  rfg::Bigint n = rfg::parse_bigint(n_text);
  if (n < 8) {
    std::cerr << "certificate requires n >= 8 (the bound starts there), got " << n_text << "\n";
    return kExitConfig;
  }
  rfg::GrowthFunction f = rfg::GrowthFunction::parse(f_spec);
  rfg::SequenceTable t = load_or_build_table(table_path, f_spec, K);
  rfg::GrowthCertificate cert = rfg::growth_certificate(n, f, t);
  std::vector<std::string> issues;
  bool valid = rfg::validate_certificate(cert, f, t, &issues);
  ordered_json j = rfg::certificate_to_json(cert);
  j["valid"] = valid;
  if (!issues.empty()) j["issues"] = issues;
  j["elapsed_ms"] = timer.ms();
  write_output(out_path, j.dump(2) + "\n");
  return valid ? kExitOk : kExitCheckFailed;
}

int cmd_rfgrowth(const std::string& pres_path, const std::string& oracle_name,
                 const std::vector<std::string>& radius_specs, const rfg::MdqOptions& opts,
                 const std::string& format, const std::string& out_path) {
  Timer timer;
  rfg::Presentation p = rfg::parse_presentation_file(pres_path);
  if (oracle_name.empty()) {
    std::cerr << "no word-problem oracle named; pass --oracle (builtin: integers, cyclic:<m>, free, free-abelian:<r>)\n";
    return kExitNoOracle;
  }
  auto gamma = rfg::make_named_gamma(oracle_name, p.ngens());
  if (!gamma || !gamma->word_problem) {
    std::cerr << "oracle '" << oracle_name << "' unavailable for a presentation on " << p.ngens() << " generator(s)\n";
    return kExitNoOracle;
  }
  std::vector<unsigned> radii = parse_radii(radius_specs);

  struct Row {
    unsigned n;
    rfg::RfResult result;
    long long elapsed_ms;
  };
  std::vector<Row> rows;
  for (unsigned r : radii) {
    Timer row_timer;
    rfg::RfResult res = rfg::rf_growth(p, *gamma->word_problem, r, opts);
    rows.push_back({r, std::move(res), row_timer.ms()});
  }

  if (format == "csv") {
    std::string csv = "n,D,elapsed_ms,witness_element,witness_min_order\n";
    for (const Row& row : rows) {
      csv += std::to_string(row.n) + ",";
      if (row.result.value) {
        csv += std::to_string(*row.result.value) + "," + std::to_string(row.elapsed_ms) + ",";
        csv += row.result.witness ? rfg::format_fp_word(p, *row.result.witness) : "-";
        csv += "," + std::to_string(row.result.witness_order);
      } else {
        const rfg::RfDetail* miss = nullptr;
        for (const auto& d : row.result.details)
          if (!d.min_order) {
            miss = &d;
            break;
          }
        csv += "not-found," + std::to_string(row.elapsed_ms) + ",";
        csv += miss ? rfg::format_fp_word(p, miss->element) : "-";
        csv += ",-";
      }
      csv += "\n";
    }
    write_output(out_path, csv);
  } else {
    ordered_json j;
    j["command"] = "rfgrowth";
    j["presentation"] = pres_path;
    j["oracle"] = oracle_name;
    ordered_json jrows = ordered_json::array();
    for (const Row& row : rows) {
      ordered_json jr;
      jr["n"] = row.n;
      if (row.result.value) {
        jr["D"] = *row.result.value;
        if (row.result.witness) jr["witness_element"] = rfg::format_fp_word(p, *row.result.witness);
        jr["witness_min_order"] = row.result.witness_order;
      } else {
        jr["D"] = nullptr;
        jr["not_found"] = true;
      }
      ordered_json elems = ordered_json::array();
      for (const auto& d : row.result.details) {
        ordered_json je;
        je["element"] = rfg::format_fp_word(p, d.element);
        if (d.min_order) {
          je["min_order"] = *d.min_order;
          je["degree"] = d.degree;
        } else {
          je["min_order"] = nullptr;
        }
        elems.push_back(std::move(je));
      }
      jr["elements"] = std::move(elems);
      jr["elapsed_ms"] = row.elapsed_ms;
      jrows.push_back(std::move(jr));
    }
    j["rows"] = std::move(jrows);
    j["elapsed_ms"] = timer.ms();
    write_output(out_path, j.dump(2) + "\n");
  }
  return kExitOk;
}

int cmd_quotients(const std::string& pres_path, const std::string& element_text, const rfg::MdqOptions& opts,
                  const std::string& out_path) {
  Timer timer;
  rfg::Presentation p = rfg::parse_presentation_file(pres_path);
  rfg::Word gamma = rfg::parse_fp_word(p, element_text);
  if (gamma.empty()) {
    std::cerr << "element reduces to the identity; nothing to detect\n";
    return kExitConfig;
  }
  auto found = rfg::minimal_detecting_quotient(p, gamma, opts);
  ordered_json j = rfg::detection_to_json(p, gamma, found);
  j["elapsed_ms"] = timer.ms();
  write_output(out_path, j.dump(2) + "\n");
  return found ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact residual-finiteness-growth laboratory"};
  app.require_subcommand(1);

  std::string f_spec = "identity";
  unsigned K = 1;
  std::string n_text;
  std::vector<std::string> radius_specs;
  std::string out_path;
  std::string format = "json";
  std::string table_path;
  std::string pres_path;
  std::string oracle_name;
  std::string element_text;
  rfg::MdqOptions mdq;
  bool unpruned = false;
  unsigned workers = 1;

  app.add_option("--workers", workers, "worker threads for parallel stages")->capture_default_str();
  app.add_option("--out", out_path, "output path (default: stdout)");
  app.add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* seq = app.add_subcommand("sequences", "build the (p, q, d) table and check clauses (i)-(v)");
  seq->add_option("--f", f_spec, "growth function: identity | poly:<c> | exp2 | table:<path>")->capture_default_str();
  seq->add_option("--K", K, "truncation level (>= 1)")->required();

  auto* ver = app.add_subcommand("verify", "compute the K x K witness detection matrix");
  ver->add_option("--f", f_spec, "growth function")->capture_default_str();
  ver->add_option("--K", K, "truncation level");
  ver->add_option("--table", table_path, "load a table JSON instead of building");

  auto* cert = app.add_subcommand("certificate", "emit the growth lower-bound certificate for n");
  cert->add_option("--f", f_spec, "growth function")->capture_default_str();
  cert->add_option("--K", K, "truncation level");
  cert->add_option("--table", table_path, "load a table JSON instead of building");
  cert->add_option("--n", n_text, "word length n >= 8")->required();

  auto* rfg_cmd = app.add_subcommand("rfgrowth", "compute D(n) for a finitely presented group");
  rfg_cmd->add_option("--presentation", pres_path, "presentation file")->required();
  rfg_cmd->add_option("--oracle", oracle_name, "word-problem oracle: integers | cyclic:<m> | free | free-abelian:<r>");
  rfg_cmd->add_option("--radius", radius_specs, "radii, e.g. 4 or 1..12 or 2,5,9")->required();
  rfg_cmd->add_option("--max-degree", mdq.max_degree, "hom search degree cap")->capture_default_str();
  rfg_cmd->add_option("--max-order", mdq.max_order, "image order cap")->capture_default_str();
  rfg_cmd->add_flag("--unpruned", unpruned, "disable the cycle-type pruning of the first generator");

  auto* quot = app.add_subcommand("quotients", "minimal detecting quotient of one element");
  quot->add_option("--presentation", pres_path, "presentation file")->required();
  quot->add_option("--element", element_text, "word to detect")->required();
  quot->add_option("--max-degree", mdq.max_degree, "hom search degree cap")->capture_default_str();
  quot->add_option("--max-order", mdq.max_order, "image order cap")->capture_default_str();
  quot->add_flag("--unpruned", unpruned, "disable the cycle-type pruning of the first generator");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  mdq.workers = workers;
  mdq.prune_first_generator = !unpruned;

  try {
    if (seq->parsed()) {
      if (K < 1) throw rfg::DomainError("K must be >= 1");
      return cmd_sequences(f_spec, K, out_path);
    }
    if (ver->parsed()) return cmd_verify(f_spec, K, table_path, workers, out_path);
    if (cert->parsed()) return cmd_certificate(f_spec, K, table_path, n_text, out_path);
    if (rfg_cmd->parsed()) return cmd_rfgrowth(pres_path, oracle_name, radius_specs, mdq, format, out_path);
    if (quot->parsed()) return cmd_quotients(pres_path, element_text, mdq, out_path);
  } catch (const rfg::TableTooShallow& e) {
    std::cerr << e.what() << "\n";
    return kExitShallow;
  } catch (const rfg::GrowthOverflow& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const rfg::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const rfg::DomainError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitConfig;
}
