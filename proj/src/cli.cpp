#include "mercator/cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mercator/export_io.hpp"
#include "mercator/fifth_chain.hpp"
#include "mercator/layout.hpp"
#include "mercator/pitch_math.hpp"
#include "mercator/rational_approx.hpp"

namespace mercator::cli {

namespace {

// Thrown for bad flag values detected after parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad integer in list: '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty division list");
  return out;
}

std::string join_names(const std::vector<NoteName>& names) {
  std::vector<std::string> parts;
  for (const NoteName& n : names) parts.push_back(n.display());
  return fmt::format("{}", fmt::join(parts, "="));
}

FifthChain chain_for(int q) {
  if (q < 2) throw UsageError("division count must be at least 2");
  try {
    return FifthChain(q, static_cast<int>(best_fifth_step(q).p));
  } catch (const std::invalid_argument&) {
    throw UsageError(fmt::format("the fifth of {}-EDO does not generate every step", q));
  }
}

std::set<int> harmonic_steps(int q) {
  std::set<int> steps;
  for (const OvertoneRow& row : overtone_table(q)) {
    const int step = (row.nearest - 1) % q + 1;
    if (step != 1) steps.insert(step);
  }
  return steps;
}

void print_temperaments(std::ostream& out, const std::vector<TemperamentRow>& rows) {
  out << fmt::format("{:>5} {:>5} {:>14} {:>14} {:>14}\n", "q", "p", "fifth height", "fifth cents", "delta cents");
  std::vector<std::string> notes;
  for (const TemperamentRow& r : rows) {
    const auto note = fifth_table_note(r);
    std::string mark;
    if (note) {
      notes.push_back(fmt::format("[{}] q={}: {}", notes.size() + 1, r.q, *note));
      mark = fmt::format(" [{}]", notes.size());
    }
    out << fmt::format("{:>5} {:>5} {:>14.10f} {:>14.8f} {:>+14.8f}{}\n", r.q, r.p, r.fifth_height, r.fifth_cents,
                       r.delta_cents, mark);
  }
  for (const std::string& n : notes) out << n << "\n";
}

void print_overtones(std::ostream& out, const std::vector<OvertoneRow>& rows, int q) {
  out << fmt::format("{:<20} {:>6} {:>14} {:>16} {:>8} {:>12}\n", "harmonic", "ratio", "log2", "mantissa cents",
                     fmt::format("{}-step", q), "deviation");
  for (const OvertoneRow& r : rows) {
    const std::string ratio = r.ratio.den() == 1 ? std::to_string(r.ratio.num()) : r.ratio.to_string();
    out << fmt::format("{:<20} {:>6} {:>14.10f} {:>16.8f} {:>8} {:>+12.6f}\n", r.label, ratio, r.log2_value,
                       r.mantissa.value, r.nearest, r.deviation.value);
  }
}

std::string fractions_text(const std::vector<Fraction>& fs) {
  std::vector<std::string> parts;
  for (const Fraction& f : fs) parts.push_back(fmt::format("{}/{}", f.p, f.q));
  return fmt::format("{}", fmt::join(parts, " "));
}

std::string terms_text(const ContinuedFraction& cf) {
  std::string out = "[";
  for (std::size_t i = 0; i < cf.terms.size(); ++i) {
    if (i == 1) out += "; ";
    if (i > 1) out += ", ";
    out += std::to_string(cf.terms[i]);
  }
  return out + "]";
}

void write_output(const std::string& text, const std::string& path, std::ostream& out, std::ostream& err) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw UsageError("cannot open '" + path + "' for writing");
  file << text;
  if (!file) throw UsageError("failed writing '" + path + "'");
  err << "wrote " << path << "\n";
}

std::string stem_of(const std::string& path) {
  std::string name = path.substr(path.find_last_of("/\\") + 1);
  if (name.size() > 4 && name.ends_with(".scl")) name.resize(name.size() - 4);
  return name;
}

void show_layout(std::ostream& out, const LayoutVariant& layout) {
  out << fmt::format("{}: {} steps, {} keys, source {}\n", layout.id, layout.system.divisions, layout.keys.size(),
                     layout.source);
  const bool named = layout.system.divisions == 53 && layout.fifth_window.has_value();
  const FifthChain chain;
  for (const Manual m : layout.manuals()) {
    for (const KeyRow r : {KeyRow::back, KeyRow::front}) {
      std::vector<Key> keys;
      for (const Key& k : layout.keys_on(m)) {
        if (k.row == r) keys.push_back(k);
      }
      std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) { return a.x < b.x; });
      std::vector<std::string> cells;
      for (const Key& k : keys) {
        cells.push_back(named ? fmt::format("{}:{}", k.step, join_names(chain.names_of_step(k.step)))
                              : std::to_string(k.step));
      }
      out << fmt::format("{:<6} {:<5} | {}\n", to_string(m), to_string(r), fmt::join(cells, " "));
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Equal-temperament tables, fifth-chain spelling and keyboard layouts", "mercator"};
  app.require_subcommand(1);

  // temperaments
  std::string q_list;
  std::string format = "pretty";
  auto* temperaments = app.add_subcommand("temperaments", "Fifth approximation per division");
  temperaments->add_option("--q", q_list, "Comma-separated division counts");
  temperaments->add_option("--format", format)->check(CLI::IsMember({"pretty", "csv"}));

  // overtones
  int overtone_q = 53;
  auto* overtones = app.add_subcommand("overtones", "Harmonic-series deviations");
  overtones->add_option("--q", overtone_q, "Division count")->check(CLI::Range(2, 100000));
  overtones->add_option("--format", format)->check(CLI::IsMember({"pretty", "csv"}));

  // cf
  std::string ratio_text;
  int terms = 12;
  bool exact = false;
  auto* cf = app.add_subcommand("cf", "Continued fraction of a ratio's height, with convergents");
  cf->add_option("--ratio", ratio_text, "Ratio a/b")->required();
  cf->add_option("--terms", terms, "Maximum number of terms")->check(CLI::Range(1, 64));
  cf->add_flag("--exact", exact, "Expand the fraction a/b itself");

  // next-better
  int after = 53;
  int q_max = 400;
  std::string metric = "cents";
  auto* next_better = app.add_subcommand("next-better", "Divisions whose fifth beats a reference");
  next_better->add_option("--after", after, "Reference division")->check(CLI::Range(2, 100000000));
  next_better->add_option("--max", q_max, "Largest division to scan")->check(CLI::Range(3, 100000000));
  next_better->add_option("--metric", metric)->check(CLI::IsMember({"cents", "steps"}));

  // name / step
  int step = 0;
  int max_acc = 4;
  int chain_q = 53;
  auto* name = app.add_subcommand("name", "Spellings of a step");
  name->add_option("--step", step)->required();
  name->add_option("--max-acc", max_acc)->check(CLI::Range(0, 1000));
  name->add_option("--q", chain_q);

  std::string note_text;
  auto* step_cmd = app.add_subcommand("step", "Step of a spelling");
  step_cmd->add_option("--name", note_text)->required();
  step_cmd->add_option("--q", chain_q);

  // circle
  int from = -26;
  int to = 30;
  auto* circle = app.add_subcommand("circle", "Chain of fifths with steps and spellings");
  circle->add_option("--from", from);
  circle->add_option("--to", to);
  circle->add_option("--q", chain_q);

  // chain
  int start = 0;
  int count = 0;
  auto* chain = app.add_subcommand("chain", "Pythagorean subset of consecutive fifths");
  chain->add_option("--start", start)->required();
  chain->add_option("--count", count)->required();
  chain->add_option("--q", chain_q);

  // layout
  std::string layout_id;
  std::string layout_file;
  std::string out_path;
  std::string layout_format = "json";
  auto* layout = app.add_subcommand("layout", "Keyboard layouts");
  layout->require_subcommand(1);
  auto* layout_list = layout->add_subcommand("list", "List shipped variants");
  auto* layout_show = layout->add_subcommand("show", "Print a variant");
  layout_show->add_option("id", layout_id)->required();
  auto* layout_validate = layout->add_subcommand("validate", "Validate a variant or a data file");
  auto* validate_id = layout_validate->add_option("id", layout_id);
  auto* validate_file = layout_validate->add_option("--file", layout_file, "Variant data file");
  validate_id->excludes(validate_file);
  auto* layout_export = layout->add_subcommand("export", "Export a variant");
  layout_export->add_option("id", layout_id)->required();
  layout_export->add_option("--format", layout_format)->check(CLI::IsMember({"json", "csv"}));
  layout_export->add_option("--out", out_path);

  // scl
  int scl_q = 53;
  std::string description;
  auto* scl = app.add_subcommand("scl", "Scala tuning file");
  scl->add_option("--q", scl_q)->check(CLI::Range(1, 100000));
  scl->add_option("--out", out_path);
  scl->add_option("--description", description);

  // freq
  double base = 0.0;
  int octave = 0;
  int freq_q = 53;
  auto* freq = app.add_subcommand("freq", "Frequency of a step");
  freq->add_option("--base", base)->required();
  freq->add_option("--step", step)->required();
  freq->add_option("--octave", octave);
  freq->add_option("--q", freq_q);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (temperaments->parsed()) {
      const auto rows = q_list.empty() ? fifth_table() : fifth_table(parse_int_list(q_list));
      if (format == "csv") {
        out << emit_table_csv(rows);
      } else {
        print_temperaments(out, rows);
      }
    } else if (overtones->parsed()) {
      const auto rows = overtone_table(overtone_q);
      if (format == "csv") {
        out << emit_table_csv(rows);
      } else {
        print_overtones(out, rows, overtone_q);
      }
    } else if (cf->parsed()) {
      const Ratio ratio = Ratio::parse(ratio_text);
      ContinuedFraction expansion;
      if (exact) {
        expansion = continued_fraction(ratio);
        if (static_cast<int>(expansion.terms.size()) > terms) expansion.terms.resize(static_cast<std::size_t>(terms));
        out << fmt::format("x = {}\n", ratio.to_string());
      } else {
        const Height h = height_of_ratio(ratio);
        if (h.value() == 0.0) throw UsageError("height of " + ratio.to_string() + " is 0; nothing to expand");
        expansion = continued_fraction(h.value(), terms);
        out << fmt::format("x = {{log2({})}} = {:.12f}\n", ratio.to_string(), h.value());
      }
      out << "terms: " << terms_text(expansion) << "\n";
      out << "convergents: " << fractions_text(convergents(expansion)) << "\n";
      out << "semiconvergents: " << fractions_text(semiconvergents(expansion)) << "\n";
    } else if (next_better->parsed()) {
      const ScanMetric m = metric == "steps" ? ScanMetric::steps : ScanMetric::cents;
      const BestFifth ref = best_fifth_step(after);
      out << fmt::format("reference {}/{}: delta {:+.8f} c; metric {}\n", ref.p, after, ref.delta_cents, metric);
      out << fmt::format("{:>8} {:>8} {:>14} {:>12}\n", "q", "p", "delta cents", "delta steps");
      for (const TemperamentRow& r : next_better_division(after, q_max, m)) {
        out << fmt::format("{:>8} {:>8} {:>+14.8f} {:>+12.8f}\n", r.q, r.p, r.delta_cents,
                           r.delta_cents * r.q / 1200.0);
      }
      const auto records = record_divisions(after, q_max, m);
      if (!records.empty()) {
        out << fmt::format("first improvement: {}/{}\n", records.front().p, records.front().q);
        if (after == 53 && records.front().q != 359) {
          out << "erratum: 210/359 is often cited as the next best after 31/53; the scan finds an earlier one\n";
        }
      }
    } else if (name->parsed()) {
      const FifthChain fc = chain_for(chain_q);
      if (step < 1 || step > chain_q) throw UsageError(fmt::format("--step must lie in 1..{}", chain_q));
      const auto names = fc.names_of_step(step, max_acc);
      if (names.empty()) {
        err << fmt::format("step {} has no spelling within {} accidentals\n", step, max_acc);
        return kExitValidation;
      }
      out << join_names(names) << "\n";
    } else if (step_cmd->parsed()) {
      const FifthChain fc = chain_for(chain_q);
      out << fc.step_of_fifth(fifth_of_spelling(NoteName::parse(note_text))) << "\n";
    } else if (circle->parsed()) {
      if (to < from) throw UsageError("--to must not be below --from");
      const FifthChain fc = chain_for(chain_q);
      out << fmt::format("{:>5} {:>5}  {}\n", "fifth", "step", "name");
      for (int f = from; f <= to; ++f) {
        out << fmt::format("{:>5} {:>5}  {}\n", f, fc.step_of_fifth(f), spelling_of_fifth(f).display());
      }
    } else if (chain->parsed()) {
      const FifthChain fc = chain_for(chain_q);
      const ChainSegment seg = fc.pythagorean_chain(start, count);
      std::vector<std::string> cells;
      for (int i = 0; i < seg.count; ++i) {
        cells.push_back(fmt::format("{}:{}", seg.steps[static_cast<std::size_t>(i)],
                                    spelling_of_fifth(start + i).display()));
      }
      std::vector<int> sorted = seg.steps;
      std::sort(sorted.begin(), sorted.end());
      out << fmt::format("chain {}..{} ({} steps)\n", start, start + count - 1, seg.count);
      out << fmt::format("{}\n", fmt::join(cells, " "));
      out << fmt::format("steps: {}\n", fmt::join(sorted, " "));
      std::vector<int> missing;
      for (const int s : harmonic_steps(chain_q)) {
        if (!std::binary_search(sorted.begin(), sorted.end(), s)) missing.push_back(s);
      }
      if (missing.empty()) {
        out << "contains all harmonic-series steps\n";
      } else {
        out << fmt::format("contains all harmonic-series steps except {}\n", fmt::join(missing, ", "));
      }
    } else if (layout->parsed()) {
      if (layout_list->parsed()) {
        for (const std::string& id : variant_ids()) {
          const LayoutVariant v = load_variant(id);
          std::vector<std::string> sizes;
          for (const Manual m : v.manuals()) sizes.push_back(fmt::format("{} {}", to_string(m), v.keys_on(m).size()));
          out << fmt::format("{:<6} q={:<3} {}\n", id, v.system.divisions, fmt::join(sizes, ", "));
        }
      } else if (layout_show->parsed()) {
        show_layout(out, load_variant(layout_id));
      } else if (layout_validate->parsed()) {
        LayoutVariant v;
        if (!layout_file.empty()) {
          std::ifstream in(layout_file, std::ios::binary);
          if (!in) throw UsageError("cannot read '" + layout_file + "'");
          std::stringstream buffer;
          buffer << in.rdbuf();
          try {
            v = parse_variant(buffer.str(), layout_file);
          } catch (const std::invalid_argument& e) {
            out << fmt::format("{}: invalid\n  {}\n", layout_file, e.what());
            return kExitValidation;
          }
        } else if (!layout_id.empty()) {
          v = parse_variant(variant_text(layout_id), "data/layouts/" + layout_id + ".txt");
        } else {
          throw UsageError("layout validate needs an id or --file");
        }
        const auto problems = validate(v);
        if (problems.empty()) {
          out << fmt::format("{}: ok ({} keys)\n", v.id, v.keys.size());
          return kExitOk;
        }
        out << fmt::format("{}: {} problem(s)\n", v.id, problems.size());
        for (const std::string& p : problems) out << "  " << p << "\n";
        return kExitValidation;
      } else if (layout_export->parsed()) {
        const LayoutVariant v = load_variant(layout_id);
        write_output(layout_format == "csv" ? emit_layout_csv(v) : emit_layout_json(v), out_path, out, err);
      }
    } else if (scl->parsed()) {
      const std::string text = description.empty() ? fmt::format("{}-tone equal temperament", scl_q) : description;
      const auto name_opt = out_path.empty() ? std::nullopt : std::optional<std::string>(stem_of(out_path));
      write_output(emit_scl(scl_q, text, name_opt), out_path, out, err);
    } else if (freq->parsed()) {
      if (freq_q < 1) throw UsageError("--q must be at least 1");
      out << fmt::format("{:.6f}\n", frequency_of_step(base, freq_q, step, octave));
    }
  } catch (const LayoutError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    // Bad values that passed flag parsing: unknown ids, out-of-range steps, malformed names.
    err << "error: " << e.what() << "\n" << app.help() << "\n";
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace mercator::cli
