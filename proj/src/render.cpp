/*
 * Copyright 2026 The cloudsel Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cstdio>
#include <sstream>

#include <json.hpp>

#include "cloudsel/api.hpp"

namespace cloudsel::api {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string money(Decimal v, int digits, bool precise) { return precise ? v.to_string() : v.to_string(digits); }

std::string millis(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

// Field name and value of every cost column, in output order.
std::vector<std::pair<const char*, std::string>> cost_fields(const CostBreakdown& b, int digits, bool precise) {
  return {{"storage_cost", money(b.storage_cost, digits, precise)},
          {"requests_cost", money(b.requests_cost, digits, precise)},
          {"cost_data_in", money(b.transfer_in_cost, digits, precise)},
          {"cost_data_out", money(b.transfer_out_cost, digits, precise)},
          {"data_transfer_cost", money(b.data_transfer_cost, digits, precise)},
          {"compute_total_cost", money(b.compute_total_cost, digits, precise)},
          {"total", money(b.total, digits, precise)}};
}

std::string render_json(const ResponseMeta& meta, const std::vector<Recommendation>& rows, int digits, bool precise) {
  ordered_json doc;
  doc["meta"] = {{"endpoint", std::string(to_string(meta.endpoint))},
                 {"count", meta.count},
                 {"currency", meta.currency},
                 {"duration_ms", std::stod(millis(meta.duration_ms))},
                 {"result_id", meta.result_id ? ordered_json(*meta.result_id) : ordered_json(nullptr)}};
  ordered_json list = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json row;
    row["rank"] = r.rank;
    row["provider_name"] = r.provider_name;
    row["region_name"] = r.region_name;
    if (r.storage_offering) row["storage_offering"] = *r.storage_offering;
    row["transfer_offering"] = r.transfer_offering;
    ordered_json compute = ordered_json::array();
    for (const auto& c : r.compute) {
      compute.push_back({{"offering", c.offering},
                         {"hours", c.hours.to_string()},
                         {"n", c.instance_count},
                         {"cost", money(c.cost, digits, precise)}});
    }
    row["compute"] = std::move(compute);
    for (auto& [name, value] : cost_fields(r.breakdown, digits, precise)) row[name] = value;
    list.push_back(std::move(row));
  }
  doc["rows"] = std::move(list);
  return doc.dump(2) + "\n";
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      case '\'': out += "&apos;"; break;
      default: out += c;
    }
  }
  return out;
}

void element(std::ostringstream& os, int indent, std::string_view name, std::string_view text) {
  os << std::string(indent, ' ') << '<' << name << '>' << xml_escape(text) << "</" << name << ">\n";
}

std::string render_xml(const ResponseMeta& meta, const std::vector<Recommendation>& rows, int digits, bool precise) {
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<response>\n  <meta>\n";
  element(os, 4, "endpoint", to_string(meta.endpoint));
  element(os, 4, "count", std::to_string(meta.count));
  element(os, 4, "currency", meta.currency);
  element(os, 4, "duration_ms", millis(meta.duration_ms));
  if (meta.result_id) element(os, 4, "result_id", *meta.result_id);
  os << "  </meta>\n  <rows>\n";
  for (const auto& r : rows) {
    os << "    <row>\n";
    element(os, 6, "rank", std::to_string(r.rank));
    element(os, 6, "provider_name", r.provider_name);
    element(os, 6, "region_name", r.region_name);
    if (r.storage_offering) element(os, 6, "storage_offering", *r.storage_offering);
    element(os, 6, "transfer_offering", r.transfer_offering);
    os << "      <compute>\n";
    for (const auto& c : r.compute) {
      os << "        <choice>\n";
      element(os, 10, "offering", c.offering);
      element(os, 10, "hours", c.hours.to_string());
      element(os, 10, "n", std::to_string(c.instance_count));
      element(os, 10, "cost", money(c.cost, digits, precise));
      os << "        </choice>\n";
    }
    os << "      </compute>\n";
    for (auto& [name, value] : cost_fields(r.breakdown, digits, precise)) element(os, 6, name, value);
    os << "    </row>\n";
  }
  os << "  </rows>\n</response>\n";
  return os.str();
}

std::string render_table(const ResponseMeta& meta, const std::vector<Recommendation>& rows, int digits,
                         bool precise) {
  std::vector<std::string> header = {"Provider Name", "region_name"};
  const bool storage = meta.endpoint != Endpoint::Compute;
  const bool compute = meta.endpoint != Endpoint::Storage;
  if (storage) header.insert(header.end(), {"storage_offering", "storage_cost", "requests_cost"});
  header.insert(header.end(), {"cost_data_in", "cost_data_out"});
  if (compute) header.insert(header.end(), {"compute", "choices_compute_total_cost"});
  header.push_back(storage && compute ? "compute_storage_dataTransfer_cost"
                                      : (storage ? "storage_dataTransfer_cost" : "compute_dataTransfer_cost"));

  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    const CostBreakdown& b = r.breakdown;
    std::vector<std::string> cells = {r.provider_name, r.region_name};
    if (storage) {
      cells.insert(cells.end(), {r.storage_offering.value_or(""), money(b.storage_cost, digits, precise),
                                 money(b.requests_cost, digits, precise)});
    }
    cells.insert(cells.end(), {money(b.transfer_in_cost, digits, precise), money(b.transfer_out_cost, digits, precise)});
    if (compute) {
      std::string names;
      for (const auto& c : r.compute) names += (names.empty() ? "" : " + ") + c.offering;
      cells.insert(cells.end(), {names, money(b.compute_total_cost, digits, precise)});
    }
    cells.push_back(money(b.total, digits, precise));
    body.push_back(std::move(cells));
  }

  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& cells : body) {
    for (std::size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  }
  std::ostringstream os;
  auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      os << (i ? " | " : "") << cells[i];
      if (i + 1 < cells.size()) os << std::string(width[i] - cells[i].size(), ' ');
    }
    os << '\n';
  };
  line(header);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "-+-" : "") << std::string(width[i], '-');
  os << '\n';
  for (const auto& cells : body) line(cells);
  os << "Fetched " << meta.count << " records in " << meta.currency << ". Duration: " << millis(meta.duration_ms)
     << " ms\n";
  return os.str();
}

}  // namespace

std::string render(Format format, const ResponseMeta& meta, const std::vector<Recommendation>& rows, int digits,
                   bool precise) {
  switch (format) {
    case Format::Xml: return render_xml(meta, rows, digits, precise);
    case Format::Table: return render_table(meta, rows, digits, precise);
    case Format::Json: break;
  }
  return render_json(meta, rows, digits, precise);
}

std::string render_error(Format format, int status, const std::string& param, const std::string& message) {
  if (format == Format::Xml) {
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<error>\n";
    element(os, 2, "status", std::to_string(status));
    element(os, 2, "param", param);
    element(os, 2, "message", message);
    os << "</error>\n";
    return os.str();
  }
  if (format == Format::Table) {
    return "error" + (param.empty() ? std::string() : " (" + param + ")") + ": " + message + "\n";
  }
  ordered_json doc;
  doc["error"] = {{"status", status}, {"param", param}, {"message", message}};
  return doc.dump(2) + "\n";
}

}  // namespace cloudsel::api
