// helly: exact verification of common-eigenvector and invariant-subspace
// Helly properties of operator families over Q and GF(p).
//
// Exit codes: 0 answer produced / property verified, 1 property refuted or
// witness absent, 2 input error, 3 budget exceeded, 4 contradiction (a
// verified theorem failed; never expected).

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "helly/helly.hpp"

namespace {

using helly::json;

constexpr int kSchemaVersion = 1;

json base_report(const std::string& command) {
  return json{{"schema_version", kSchemaVersion}, {"command", command}};
}

void emit(bool as_json, const json& report, const std::string& text) {
  if (as_json) {
    std::cout << report.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

json index_list(helly::SetMask mask) {
  json out = json::array();
  for (int e : helly::mask_elements(mask)) out.push_back(e);
  return out;
}

std::string format_vector(const helly::Vector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += v[i].format();
  }
  return out + ")";
}

json line_to_json(const helly::CommonEigenLine& line) {
  json assignment = json::object();
  for (const auto& [name, value] : line.assignment) assignment[name] = value.format();
  return json{{"basis", helly::subspace_to_json(line.subspace)},
              {"dim", line.subspace.dim()},
              {"assignment", assignment}};
}

json helly_report_to_json(const helly::HellyReport& r) {
  // Operator positions are reported 1-based, matching the set-family index
  // convention used everywhere else in the JSON output.
  json failing = json::array();
  for (const auto& subset : r.failing_subsets) {
    json s = json::array();
    for (std::size_t i : subset) s.push_back(i + 1);
    failing.push_back(s);
  }
  return json{{"family_id", r.family_id},
              {"k", r.k},
              {"subset_size", r.subset_size},
              {"subsets_checked", r.subsets_checked},
              {"failing_subsets", failing},
              {"full_family_ok", r.full_family_ok},
              {"degenerate", r.degenerate},
              {"implication_failed", r.implication_failed},
              {"contradiction", r.contradiction},
              {"certificate", r.certificate}};
}

int helly_report_exit(const helly::HellyReport& r) {
  if (r.contradiction) return 4;
  if (r.implication_failed) return 1;
  return 0;
}

std::string helly_report_text(const helly::HellyReport& r) {
  std::string out;
  out += "subsets of size " + std::to_string(r.subset_size) + ": " +
         std::to_string(r.subsets_checked) + " checked, " +
         std::to_string(r.failing_subsets.size()) + " without the property\n";
  for (const auto& subset : r.failing_subsets) {
    std::string ids;
    for (std::size_t i : subset) ids += (ids.empty() ? "" : ",") + std::to_string(i + 1);
    out += "  failing subset {" + ids + "}\n";
  }
  out += std::string("full family: ") + (r.full_family_ok ? "has" : "does not have") +
         " the property\n";
  if (r.degenerate) out += "degenerate sweep: family smaller than the threshold\n";
  if (r.implication_failed) out += "Helly implication FAILED: " + r.certificate + "\n";
  if (r.contradiction) out += "CONTRADICTION: inside the proven regime\n";
  return out;
}

struct Options {
  bool as_json = false;
  unsigned threads = 1;  // accepted for interface stability; execution is
                         // sequential and output is identical for any value
};

int run(int argc, char** argv) {
  CLI::App app{"Common eigenvectors, invariant subspaces and their Helly numbers, exactly"};
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--json", opt.as_json, "emit machine-readable JSON reports");
  app.add_option("--threads", opt.threads, "worker count (output is identical for any value)");

  // common-eig <family.json>
  auto* cmd_eig = app.add_subcommand("common-eig", "common eigen lines of a family");
  std::string eig_path;
  cmd_eig->add_option("family", eig_path, "family JSON file")->required();

  // verify-sharpness --d D --field F
  auto* cmd_sharp = app.add_subcommand("verify-sharpness",
                                       "build the floor(3d/2) lower-bound family and verify it");
  std::size_t sharp_d = 0;
  std::string sharp_field;
  cmd_sharp->add_option("--d", sharp_d, "dimension (>= 2)")->required();
  cmd_sharp->add_option("--field", sharp_field, "Q or GF:p")->required();

  // lemma verify / extremal / witness
  auto* cmd_lemma = app.add_subcommand("lemma", "the union-condition bound p <= 2q-2");
  cmd_lemma->require_subcommand(1);
  auto* cmd_lverify = cmd_lemma->add_subcommand("verify", "scan families of size 2q-1");
  int lemma_q = 0;
  std::uint64_t lemma_samples = 5000;
  cmd_lverify->add_option("--q", lemma_q, "ground set size (exhaustive q <= 4, sampled q = 5)")
      ->required();
  cmd_lverify->add_option("--samples", lemma_samples, "sample count for q = 5");
  auto* cmd_lextremal = cmd_lemma->add_subcommand("extremal", "the two-chain family of 2q-2 sets");
  int extremal_q = 0;
  cmd_lextremal->add_option("--q", extremal_q, "ground set size (>= 2)")->required();
  auto* cmd_lwitness = cmd_lemma->add_subcommand("witness", "redundant-union witness search");
  std::string witness_path;
  cmd_lwitness->add_option("setfamily", witness_path, "set family JSON file")->required();

  // helly-eig <family.json> --k K
  auto* cmd_heig = app.add_subcommand("helly-eig", "k-subset sweep for common eigenvectors");
  std::string heig_path;
  std::size_t heig_k = 0;
  cmd_heig->add_option("family", heig_path, "family JSON file")->required();
  cmd_heig->add_option("--k", heig_k, "subset size threshold")->required();

  // helly-inv <family.json> --l L
  auto* cmd_hinv = app.add_subcommand("helly-inv", "l-subset sweep for invariant subspaces");
  std::string hinv_path;
  std::size_t hinv_l = 0;
  cmd_hinv->add_option("family", hinv_path, "family JSON file")->required();
  cmd_hinv->add_option("--l", hinv_l, "subset size threshold")->required();

  // invsub <family.json> --a0 NAME --subspaces FILE
  auto* cmd_invsub = app.add_subcommand("invsub", "combine leave-one-out invariant subspaces");
  std::string invsub_path, invsub_a0, invsub_subspaces;
  cmd_invsub->add_option("family", invsub_path, "family JSON file")->required();
  cmd_invsub->add_option("--a0", invsub_a0, "name of the distinct-spectrum operator")->required();
  cmd_invsub->add_option("--subspaces", invsub_subspaces,
                         "JSON array of leave-one-out subspaces (basis rows)")
      ->required();

  // gen --strategy S --d D --n N --field F --seed SEED -o out.json
  auto* cmd_gen = app.add_subcommand("gen", "deterministic family generator");
  std::string gen_strategy, gen_field, gen_out;
  std::size_t gen_d = 0, gen_n = 0;
  std::uint64_t gen_seed = 0;
  cmd_gen->add_option("--strategy", gen_strategy,
                      "uniform | planted_eigenvector | planted_invariant | block_scalar | "
                      "perturbed_sharpness")
      ->required();
  cmd_gen->add_option("--d", gen_d, "dimension")->required();
  cmd_gen->add_option("--n", gen_n, "operator count")->required();
  cmd_gen->add_option("--field", gen_field, "Q or GF:p")->required();
  cmd_gen->add_option("--seed", gen_seed, "RNG seed")->required();
  cmd_gen->add_option("-o,--out", gen_out, "output family file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const helly::Budgets budgets = helly::Budgets::from_env();

  if (app.got_subcommand(cmd_eig)) {
    helly::OperatorFamily fam = helly::load_family(eig_path);
    std::vector<helly::CommonEigenLine> lines = helly::common_eigen_refinement(fam);
    json report = base_report("common-eig");
    report["lines"] = json::array();
    for (const auto& line : lines) report["lines"].push_back(line_to_json(line));
    report["count"] = lines.size();
    std::string text;
    if (lines.empty()) {
      text = "none\n";
    } else {
      for (const auto& line : lines) {
        text += line.subspace.to_string() + " with";
        for (const auto& [name, value] : line.assignment) {
          text += " " + name + ":" + value.format();
        }
        text += "\n";
      }
    }
    emit(opt.as_json, report, text);
    return lines.empty() ? 1 : 0;
  }

  if (app.got_subcommand(cmd_sharp)) {
    helly::FieldSpec field = helly::parse_field_arg(sharp_field);
    helly::OperatorFamily fam = helly::build_sharpness_family(sharp_d, field, budgets);
    helly::SharpnessReport rep = helly::verify_sharpness(fam, budgets);
    json report = base_report("verify-sharpness");
    report["d"] = sharp_d;
    report["field"] = helly::field_to_json(field);
    report["operators"] = fam.size();
    report["sharp"] = rep.sharp;
    report["full_family_has_common"] = rep.full_family_has_common;
    report["oracle_checked"] = rep.oracle_checked;
    report["leave_one_out"] = json::array();
    std::string text = std::to_string(fam.size()) + " operators on dimension " +
                       std::to_string(sharp_d) + " over " + field.to_string() + "\n";
    for (const auto& o : rep.leave_one_out) {
      json entry{{"omitted", o.omitted}, {"has_common", o.has_common}};
      if (o.witness) entry["witness"] = helly::vector_to_json(*o.witness);
      report["leave_one_out"].push_back(entry);
      text += "without " + o.omitted + ": " +
              (o.has_common ? "common eigenvector " + format_vector(*o.witness)
                            : "no common eigenvector") +
              "\n";
    }
    text += std::string("full family: ") +
            (rep.full_family_has_common ? "common eigenvector exists" : "no common eigenvector") +
            "\n" + (rep.sharp ? "sharp\n" : "NOT sharp\n");
    emit(opt.as_json, report, text);
    return rep.sharp ? 0 : 1;
  }

  if (app.got_subcommand(cmd_lemma)) {
    if (cmd_lemma->got_subcommand(cmd_lverify)) {
      helly::BoundReport rep = helly::exhaustive_verify_bound(lemma_q, lemma_samples, budgets);
      json report = base_report("lemma-verify");
      report["q"] = rep.q;
      report["family_size"] = rep.family_size;
      report["families_checked"] = rep.families_checked;
      report["all_fail"] = rep.all_fail;
      report["sampled"] = rep.sampled;
      std::string text = std::to_string(rep.families_checked) + " families of size " +
                         std::to_string(rep.family_size) + " checked" +
                         (rep.sampled ? " (sampled)" : "") + ", all fail condition\n";
      emit(opt.as_json, report, text);
      return 0;
    }
    if (cmd_lemma->got_subcommand(cmd_lextremal)) {
      helly::SetFamily fam = helly::extremal_family(extremal_q);
      helly::ConditionVerdict verdict = helly::lemma_condition_holds(fam, budgets);
      json report = base_report("lemma-extremal");
      report["q"] = fam.q();
      report["size"] = fam.size();
      report["members"] = helly::set_family_to_json(fam)["members"];
      report["condition_holds"] = verdict.holds;
      std::string text;
      for (helly::SetMask m : fam.members()) text += helly::mask_to_string(m) + "\n";
      text += std::to_string(fam.size()) + " members, condition " +
              (verdict.holds ? "holds" : "FAILS") + "\n";
      emit(opt.as_json, report, text);
      return verdict.holds ? 0 : 4;
    }
    helly::SetFamily fam = helly::load_set_family(witness_path);
    auto witness = helly::find_redundant_union_witness(fam, budgets);
    json report = base_report("lemma-witness");
    report["found"] = witness.has_value();
    std::string text;
    if (witness) {
      report["index_set"] = index_list(witness->index_set);
      report["union"] = index_list(witness->union_set);
      text = "I = " + helly::mask_to_string(witness->index_set) +
             ", union = " + helly::mask_to_string(witness->union_set) + "\n";
    } else {
      text = "none\n";
    }
    emit(opt.as_json, report, text);
    return witness ? 0 : 1;
  }

  if (app.got_subcommand(cmd_heig)) {
    helly::OperatorFamily fam = helly::load_family(heig_path);
    helly::HellyReport rep = helly::helly_check_eigenvectors(fam, heig_k, budgets, heig_path);
    json report = base_report("helly-eig");
    report.update(helly_report_to_json(rep));
    emit(opt.as_json, report, helly_report_text(rep));
    return helly_report_exit(rep);
  }

  if (app.got_subcommand(cmd_hinv)) {
    helly::OperatorFamily fam = helly::load_family(hinv_path);
    helly::HellyReport rep = helly::helly_check_invariant(fam, hinv_l, budgets, hinv_path);
    json report = base_report("helly-inv");
    report.update(helly_report_to_json(rep));
    emit(opt.as_json, report, helly_report_text(rep));
    return helly_report_exit(rep);
  }

  if (app.got_subcommand(cmd_invsub)) {
    helly::OperatorFamily fam = helly::load_family(invsub_path);
    std::size_t a0_index = fam.size();
    for (std::size_t i = 0; i < fam.size(); ++i) {
      if (fam[i].name == invsub_a0) a0_index = i;
    }
    if (a0_index == fam.size()) {
      throw helly::input_error("no operator named \"" + invsub_a0 + "\" in the family");
    }
    std::vector<helly::Subspace> subspaces = helly::subspaces_from_json(
        helly::read_json_file(invsub_subspaces), fam.field(), fam.dim());
    helly::Subspace result =
        helly::common_invariant_via_theorem4(fam, a0_index, subspaces, budgets);
    json report = base_report("invsub");
    report["subspace"] = helly::subspace_to_json(result);
    report["dim"] = result.dim();
    emit(opt.as_json, report,
         "common invariant subspace: " + result.to_string() + "\n");
    return 0;
  }

  // gen
  helly::FieldSpec field = helly::parse_field_arg(gen_field);
  helly::GeneratorStrategy strategy = helly::parse_strategy(gen_strategy);
  helly::OperatorFamily fam = helly::generate_family(gen_d, field, gen_n, gen_seed, strategy);
  helly::save_family(fam, gen_out);
  json report = base_report("gen");
  report["written"] = gen_out;
  report["operators"] = fam.size();
  report["dim"] = fam.dim();
  report["field"] = helly::field_to_json(field);
  report["seed"] = gen_seed;
  report["strategy"] = gen_strategy;
  emit(opt.as_json, report,
       "wrote " + std::to_string(fam.size()) + " operators to " + gen_out + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const helly::witness_absent_error& e) {
    std::cerr << "refuted: " << e.what() << "\n";
    return 1;
  } catch (const helly::input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const helly::budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const helly::contradiction_error& e) {
    std::cerr << "CONTRADICTION: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
