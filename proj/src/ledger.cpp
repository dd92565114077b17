#include "dqtk/ledger.hpp"

#include <fstream>
#include <sstream>

namespace dqtk {

std::string to_string(EntryKind kind) {
  return kind == EntryKind::Assessment ? "assessment" : "remediation";
}

EntryKind entry_kind_from_string(const std::string& s) {
  if (s == "assessment") return EntryKind::Assessment;
  if (s == "remediation") return EntryKind::Remediation;
  throw Error("unknown lineage entry kind '" + s + "'");
}

Json LineageEntry::to_json() const {
  Json j{{"op_id", op_id},
         {"kind", to_string(kind)},
         {"params", params},
         {"rows_affected", rows_affected},
         {"cols_affected", cols_affected},
         {"input_fingerprint", input_fingerprint},
         {"output_fingerprint", output_fingerprint},
         {"timestamp", timestamp},
         {"status", status}};
  if (decisions_ref) j["decisions_ref"] = *decisions_ref;
  if (score_before) j["score_before"] = *score_before;
  if (score_after) j["score_after"] = *score_after;
  if (error) j["error"] = *error;
  if (result) j["result"] = *result;
  return j;
}

LineageEntry LineageEntry::from_json(const Json& j) {
  LineageEntry e;
  e.op_id = j.at("op_id").get<std::string>();
  e.kind = entry_kind_from_string(j.at("kind").get<std::string>());
  e.params = j.value("params", Json::object());
  if (j.contains("decisions_ref")) e.decisions_ref = j.at("decisions_ref").get<std::string>();
  e.rows_affected = j.at("rows_affected").get<std::int64_t>();
  e.cols_affected = j.at("cols_affected").get<std::vector<std::string>>();
  if (j.contains("score_before")) e.score_before = j.at("score_before").get<double>();
  if (j.contains("score_after")) e.score_after = j.at("score_after").get<double>();
  e.input_fingerprint = j.at("input_fingerprint").get<std::string>();
  e.output_fingerprint = j.at("output_fingerprint").get<std::string>();
  e.timestamp = j.at("timestamp").get<std::string>();
  e.status = j.value("status", std::string("ok"));
  if (j.contains("error")) e.error = j.at("error").get<std::string>();
  if (j.contains("result")) e.result = j.at("result");
  return e;
}

void LineageLedger::append(LineageEntry entry) {
  entries_.push_back(std::move(entry));
}

std::optional<std::string> LineageLedger::latest_fingerprint() const {
  for (auto it = entries_.rbegin(); it != entries_.rend(); ++it) {
    if (it->status == "ok") return it->output_fingerprint;
  }
  return std::nullopt;
}

void LineageLedger::validate_chain() const {
  std::optional<std::string> current;
  for (const auto& e : entries_) {
    if (e.status != "ok") continue;
    if (e.kind == EntryKind::Assessment) {
      if (e.input_fingerprint != e.output_fingerprint) {
        throw Error("assessment entry '" + e.op_id + "' changed the fingerprint");
      }
      if (e.rows_affected != 0) {
        throw Error("assessment entry '" + e.op_id + "' affected rows");
      }
    }
    if (current && e.input_fingerprint != *current) {
      throw Error("broken lineage chain at '" + e.op_id + "': input " +
                  e.input_fingerprint + " != previous output " + *current);
    }
    current = e.output_fingerprint;
  }
}

std::string LineageLedger::to_jsonl() const {
  std::string out;
  for (const auto& e : entries_) {
    out += e.to_json().dump();
    out += '\n';
  }
  return out;
}

LineageLedger LineageLedger::from_jsonl(const std::string& text) {
  LineageLedger ledger;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    Json j = Json::parse(line, nullptr, false);
    if (j.is_discarded()) {
      throw Error("corrupt ledger line " + std::to_string(lineno));
    }
    ledger.entries_.push_back(LineageEntry::from_json(j));
  }
  return ledger;
}

void LineageLedger::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write ledger '" + path + "'");
  out << to_jsonl();
}

LineageLedger LineageLedger::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open ledger '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_jsonl(buf.str());
}

}  // namespace dqtk
