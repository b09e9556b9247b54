#include "mercator/export_io.hpp"

#include <algorithm>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace mercator {

namespace {

std::string fixed8(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  return fmt::format("{:.8f}", v);
}

std::string ratio_text(const Ratio& r) {
  return r.den() == 1 ? std::to_string(r.num()) : r.to_string();
}

nlohmann::json annotation_json(const StepAnnotation& a) {
  nlohmann::json out = nlohmann::json::object();
  if (a.diatonic) out["diatonic"] = *a.diatonic;
  if (a.overtone) out["overtone"] = *a.overtone;
  return out;
}

}  // namespace

SclDocument build_scl(int q, std::string description, std::optional<std::string> name) {
  const double step = edo_step_cents(q).value;
  SclDocument doc;
  doc.name = name ? std::move(*name) : fmt::format("c{}", q);
  doc.description = std::move(description);
  doc.degree_count = q;
  for (int i = 1; i < q; ++i) doc.degrees.push_back(fmt::format("{:.5f}", i * step));
  doc.degrees.emplace_back("2/1");
  return doc;
}

std::string render_scl(const SclDocument& doc) {
  std::string out = fmt::format("! {}.scl\n!\n{}\n {}\n!\n", doc.name, doc.description, doc.degree_count);
  for (const std::string& d : doc.degrees) out += fmt::format(" {}\n", d);
  return out;
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (const char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string emit_table_csv(std::span<const TemperamentRow> rows) {
  std::string out = "q,p,fifth_height,fifth_cents,delta_cents,note\n";
  for (const TemperamentRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.q, r.p, fixed8(r.fifth_height), fixed8(r.fifth_cents),
                       fixed8(r.delta_cents), csv_field(fifth_table_note(r).value_or("")));
  }
  return out;
}

std::string emit_table_csv(std::span<const OvertoneRow> rows) {
  std::string out = "label,ratio,log2_ratio,mantissa_cents,nearest_step,deviation_cents\n";
  for (const OvertoneRow& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", csv_field(r.label), ratio_text(r.ratio), fixed8(r.log2_value),
                       fixed8(r.mantissa.value), r.nearest, fixed8(r.deviation.value));
  }
  return out;
}

std::string emit_layout_json(const LayoutVariant& layout) {
  const LayoutVariant valid = checked(layout);

  nlohmann::json doc;
  doc["schema_version"] = kLayoutSchemaVersion;
  doc["variant_id"] = valid.id;
  doc["source"] = valid.source;
  doc["system"] = {{"divisions", valid.system.divisions}, {"step_cents", valid.system.step_cents}};

  nlohmann::json manuals = nlohmann::json::array();
  for (const Manual m : valid.manuals()) {
    nlohmann::json rows = nlohmann::json::array();
    for (const KeyRow r : {KeyRow::back, KeyRow::front}) {
      std::vector<Key> keys;
      for (const Key& k : valid.keys_on(m)) {
        if (k.row == r) keys.push_back(k);
      }
      if (keys.empty()) continue;
      std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) { return a.x < b.x; });
      nlohmann::json key_list = nlohmann::json::array();
      for (const Key& k : keys) {
        key_list.push_back({{"step", k.step}, {"x", k.x}, {"color", std::string(to_string(k.color))}});
      }
      rows.push_back({{"kind", std::string(to_string(r))}, {"keys", std::move(key_list)}});
    }
    manuals.push_back({{"name", std::string(to_string(m))}, {"rows", std::move(rows)}});
  }
  doc["manuals"] = std::move(manuals);

  // Names and interval labels exist only for 53-step variants with a naming window.
  if (valid.system.divisions == 53 && valid.fifth_window) {
    const FifthChain chain;
    nlohmann::json labels = nlohmann::json::object();
    nlohmann::json annotations = nlohmann::json::object();
    for (int step = 1; step <= 53; ++step) {
      nlohmann::json names = nlohmann::json::array();
      for (const NoteName& n : chain.names_of_step(step)) names.push_back(n.display());
      labels[std::to_string(step)] = std::move(names);
      const StepAnnotation a = annotate(step);
      if (a.diatonic || a.overtone) annotations[std::to_string(step)] = annotation_json(a);
    }
    doc["labels"] = std::move(labels);
    doc["annotations"] = std::move(annotations);
  }
  return doc.dump(2) + "\n";
}

std::string emit_layout_csv(const LayoutVariant& layout) {
  const LayoutVariant valid = checked(layout);
  std::string out = "manual,row,x,step,color\n";
  for (const Manual m : valid.manuals()) {
    for (const KeyRow r : {KeyRow::back, KeyRow::front}) {
      std::vector<Key> keys;
      for (const Key& k : valid.keys_on(m)) {
        if (k.row == r) keys.push_back(k);
      }
      std::sort(keys.begin(), keys.end(), [](const Key& a, const Key& b) { return a.x < b.x; });
      for (const Key& k : keys) {
        out += fmt::format("{},{},{},{},{}\n", to_string(m), to_string(r), k.x, k.step, to_string(k.color));
      }
    }
  }
  return out;
}

}  // namespace mercator
