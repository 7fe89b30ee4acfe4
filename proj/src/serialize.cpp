#include "tmis/serialize.hpp"

#include <sstream>

namespace tmis::serialize {

using namespace protocol;

namespace {

Json optional_key(const std::optional<BigInt>& key) {
  if (!key) return nullptr;
  return to_hex(*key);
}

// Display width of UTF-8 text, one column per code point.
std::size_t columns(const std::string& text) {
  std::size_t n = 0;
  for (unsigned char c : text) {
    if ((c & 0xC0) != 0x80) ++n;
  }
  return n;
}

std::string pad(const std::string& text, std::size_t width) {
  std::size_t used = columns(text);
  return text + std::string(width > used ? width - used : 0, ' ');
}

std::string render_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths;
  for (const auto& row : rows) {
    widths.resize(std::max(widths.size(), row.size()), 3);
    for (std::size_t i = 0; i < row.size(); ++i) widths[i] = std::max(widths[i], columns(row[i]));
  }
  std::ostringstream out;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out << "|";
    for (std::size_t i = 0; i < widths.size(); ++i) {
      out << " " << pad(i < rows[r].size() ? rows[r][i] : "", widths[i]) << " |";
    }
    out << "\n";
    if (r == 0) {
      out << "|";
      for (std::size_t w : widths) out << std::string(w + 2, '-') << "|";
      out << "\n";
    }
  }
  return out.str();
}

std::string field_text(const FieldValue& value) {
  if (const auto* i = std::get_if<BigInt>(&value)) return to_hex(*i);
  const auto& p = std::get<crypto::EcPoint>(value);
  if (p.infinity) return "O";
  return "(" + to_hex(p.x) + ", " + to_hex(p.y) + ")";
}

std::string outcome_line(const SessionOutcome& outcome) {
  std::string line(outcome_kind(outcome));
  std::string step = failure_step(outcome);
  if (!step.empty()) line += " at " + step;
  if (const auto* ok = std::get_if<MutualAuthSuccess>(&outcome)) {
    if (ok->keys_established()) line += ok->keys_match() ? " (keys match)" : " (keys differ)";
    else line += " (no session key)";
  }
  return line;
}

}  // namespace

Json to_json(const FieldValue& value) {
  if (const auto* i = std::get_if<BigInt>(&value)) return to_hex(*i);
  const auto& p = std::get<crypto::EcPoint>(value);
  if (p.infinity) return Json{{"infinity", true}};
  return Json{{"x", to_hex(p.x)}, {"y", to_hex(p.y)}};
}

Json to_json(const OpCounters& c) {
  return Json{{"hash_ops", c.hash_ops},
              {"exponentiations", c.exponentiations},
              {"ec_multiplications", c.ec_multiplications},
              {"inversions", c.inversions}};
}

Json to_json(const Transcript& t) {
  Json j;
  j["scheme"] = std::string(to_string(t.scheme));
  j["seed"] = t.seed;
  j["outcome"] = std::string(outcome_kind(t.outcome));
  j["failure_step"] = failure_step(t.outcome);
  if (const auto* ok = std::get_if<MutualAuthSuccess>(&t.outcome)) {
    j["user_key"] = optional_key(ok->user_key);
    j["server_key"] = optional_key(ok->server_key);
  }
  Json messages = Json::array();
  for (const auto& entry : t.messages) {
    Json fields = Json::object();
    for (const auto& [name, value] : entry.message.fields) fields[name] = to_json(value);
    messages.push_back(Json{{"name", entry.message.name},
                            {"from", std::string(to_string(entry.message.sender))},
                            {"to", std::string(to_string(entry.message.receiver))},
                            {"sent_at", entry.message.sent_at},
                            {"received_at", entry.received_at},
                            {"event", std::string(to_string(entry.event))},
                            {"fields", fields}});
  }
  j["messages"] = messages;
  j["counters"] = Json{{"user", to_json(t.user_counters)}, {"server", to_json(t.server_counters)}};
  return j;
}

Json to_json(const attacks::AttackReport& r, bool include_transcripts) {
  Json j;
  j["scheme"] = std::string(to_string(r.scheme));
  j["scenario"] = std::string(attacks::to_string(r.scenario));
  j["vulnerable"] = r.vulnerable;
  j["failure_step"] = r.failure_step;
  j["messages_sent"] = r.messages_sent;
  j["server_hash_ops"] = r.server_hash_ops;
  j["trials"] = r.trials;
  j["seed"] = r.seed;
  j["parameters"] = r.parameters;
  j["metrics"] = r.metrics;
  j["notes"] = r.notes;
  if (auto e = attacks::published_expectation(r)) {
    j["expected"] = Json{{"vulnerable", e->vulnerable},
                         {"failure_step", e->failure_step ? Json(*e->failure_step) : Json(nullptr)}};
  } else {
    j["expected"] = nullptr;
  }
  j["agrees_with_publication"] = attacks::agrees_with_publication(r);
  if (include_transcripts) {
    Json ts = Json::array();
    for (const auto& t : r.transcripts) ts.push_back(to_json(t));
    j["transcripts"] = ts;
  } else {
    j["transcript_count"] = r.transcripts.size();
  }
  return j;
}

Json to_json(const attacks::Matrix& m, bool include_transcripts) {
  Json j;
  j["trials"] = m.trials;
  j["seed"] = m.seed;
  j["schemes"] = Json::array();
  for (SchemeId s : kAllSchemes) j["schemes"].push_back(std::string(to_string(s)));
  Json rows = Json::array();
  for (const auto& row : m.rows) {
    Json cells = Json::object();
    for (std::size_t i = 0; i < row.cells.size(); ++i) {
      const auto& c = row.cells[i];
      cells[std::string(to_string(kAllSchemes[i]))] =
          Json{{"mark", std::string(attacks::symbol(c.mark))},
               {"published", std::string(attacks::symbol(c.published))},
               {"evidence", c.evidence}};
    }
    rows.push_back(Json{{"attribute", row.attribute},
                        {"source", row.simulated ? "simulated" : "published"},
                        {"cells", cells}});
  }
  j["rows"] = rows;
  Json mismatches = Json::array();
  for (const auto& mm : m.mismatches()) {
    mismatches.push_back(Json{{"attribute", mm.attribute},
                              {"scheme", std::string(to_string(mm.scheme))},
                              {"derived", std::string(attacks::symbol(mm.derived))},
                              {"published", std::string(attacks::symbol(mm.published))}});
  }
  j["mismatches"] = mismatches;
  j["matches_publication"] = m.matches_publication();
  Json reports = Json::array();
  for (const auto& r : m.reports) reports.push_back(to_json(r, include_transcripts));
  j["reports"] = reports;
  return j;
}

std::string to_text(const Transcript& t) {
  std::ostringstream out;
  out << "scheme " << to_string(t.scheme) << ", seed " << t.seed << "\n";
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const auto& e = t.messages[i];
    out << "  [" << i << "] " << e.message.name << " " << to_string(e.message.sender) << " -> "
        << to_string(e.message.receiver) << " at " << e.message.sent_at << "/" << e.received_at << " ("
        << to_string(e.event) << ")\n";
    for (const auto& [name, value] : e.message.fields) out << "      " << name << " = " << field_text(value) << "\n";
  }
  out << "  outcome: " << outcome_line(t.outcome) << "\n";
  out << "  server work: " << t.server_counters.hash_ops << " hashes, " << t.server_counters.exponentiations
      << " exponentiations, " << t.server_counters.ec_multiplications << " point multiplications\n";
  return out.str();
}

std::string to_text(const attacks::AttackReport& r) {
  std::ostringstream out;
  out << to_string(r.scheme) << " / " << attacks::to_string(r.scenario);
  for (const auto& [k, v] : r.parameters) out << " " << k << "=" << v;
  out << "\n";
  out << "  vulnerable:            " << (r.vulnerable ? "true" : "false") << "\n";
  out << "  failure step:          " << (r.failure_step.empty() ? "-" : r.failure_step) << "\n";
  out << "  trials:                " << r.trials << " (seed " << r.seed << ")\n";
  out << "  messages sent:         " << r.messages_sent << "\n";
  out << "  server hashes:         " << r.server_hash_ops << "\n";
  for (const auto& [k, v] : r.metrics) out << "  " << pad(k + ":", 23) << v << "\n";
  for (const auto& note : r.notes) out << "  note: " << note << "\n";
  if (auto e = attacks::published_expectation(r)) {
    out << "  expected:              vulnerable=" << (e->vulnerable ? "true" : "false");
    if (e->failure_step) out << ", step=" << (e->failure_step->empty() ? "-" : *e->failure_step);
    out << (attacks::agrees_with_publication(r) ? " (agrees)" : " (DISAGREES)") << "\n";
  }
  return out.str();
}

std::string to_markdown(const Transcript& t) {
  std::vector<std::vector<std::string>> rows{{"#", "message", "from", "to", "event", "fields"}};
  for (std::size_t i = 0; i < t.messages.size(); ++i) {
    const auto& e = t.messages[i];
    std::string fields;
    for (const auto& [name, value] : e.message.fields) {
      fields += (fields.empty() ? "" : ", ") + name + "=" + field_text(value);
    }
    rows.push_back({std::to_string(i), e.message.name, std::string(to_string(e.message.sender)),
                    std::string(to_string(e.message.receiver)), std::string(to_string(e.event)), fields});
  }
  return "**" + std::string(to_string(t.scheme)) + "**: " + outcome_line(t.outcome) + "\n\n" + render_table(rows);
}

std::string to_markdown(const attacks::AttackReport& r) {
  std::vector<std::vector<std::string>> rows{{"key", "value"}};
  rows.push_back({"scheme", std::string(to_string(r.scheme))});
  rows.push_back({"scenario", std::string(attacks::to_string(r.scenario))});
  for (const auto& [k, v] : r.parameters) rows.push_back({k, v});
  rows.push_back({"vulnerable", r.vulnerable ? "true" : "false"});
  rows.push_back({"failure_step", r.failure_step.empty() ? "-" : r.failure_step});
  rows.push_back({"trials", std::to_string(r.trials)});
  rows.push_back({"messages_sent", std::to_string(r.messages_sent)});
  rows.push_back({"server_hash_ops", std::to_string(r.server_hash_ops)});
  for (const auto& [k, v] : r.metrics) rows.push_back({k, std::to_string(v)});
  rows.push_back({"agrees_with_publication", attacks::agrees_with_publication(r) ? "true" : "false"});
  std::string out = render_table(rows);
  for (const auto& note : r.notes) out += "\n- " + note;
  if (!r.notes.empty()) out += "\n";
  return out;
}

std::string to_markdown(const attacks::Matrix& m) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{"Attribute", "Source"};
  for (SchemeId s : kAllSchemes) header.emplace_back(to_string(s));
  rows.push_back(header);
  for (const auto& row : m.rows) {
    std::vector<std::string> line{row.attribute, row.simulated ? "simulated" : "published"};
    for (const auto& c : row.cells) {
      std::string text(attacks::symbol(c.mark));
      if (c.mark != c.published) text += " (published " + std::string(attacks::symbol(c.published)) + ")";
      line.push_back(text);
    }
    rows.push_back(line);
  }
  std::string out = render_table(rows);
  auto mismatches = m.mismatches();
  if (mismatches.empty()) {
    out += "\nAll simulated cells agree with the published marks.\n";
  } else {
    out += "\nSimulated cells that disagree with the published marks:\n";
    for (const auto& mm : mismatches) {
      out += "- " + mm.attribute + ", " + std::string(to_string(mm.scheme)) + ": derived " +
             std::string(attacks::symbol(mm.derived)) + ", published " + std::string(attacks::symbol(mm.published)) +
             "\n";
    }
  }
  return out;
}

}  // namespace tmis::serialize
