// SPDX-License-Identifier: Apache-2.0
//
// mmwsim - link-level simulator for a 28 GHz hybrid-beamforming massive MIMO base station
// Copyright (C) 2026 the mmwsim contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "core/format.hpp"
#include "core/scenario.hpp"

namespace mmwsim::scenario {

using ordered_json = nlohmann::ordered_json;
namespace fs = std::filesystem;

std::string RunResult::to_json_text() const {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["library_version"] = library_version;
  j["kind"] = kind;
  j["seed"] = seed;
  j["config_hash"] = config_hash;
  j["snr_mode"] = snr_mode;

  ordered_json ues = ordered_json::array();
  for (const auto& m : ue_metrics)
    ues.push_back({{"ue", m.ue},
                   {"constellation", m.constellation},
                   {"num_symbols", m.num_symbols},
                   {"evm_percent", m.evm_percent},
                   {"ser", m.ser}});
  j["ue_metrics"] = ues;

  j["selected_beams"] = selected_beams;
  j["control_word"] = control_word;

  ordered_json sweep = ordered_json::array();
  for (const auto& row : sweep_magnitudes) sweep.push_back({row[0], row[1], row[2], row[3]});
  j["sweep_magnitudes"] = sweep;

  ordered_json rows = ordered_json::array();
  for (const auto& b : budget_rows) {
    ordered_json row = {{"distance_m", b.distance_m},
                        {"eirp_dbm", b.eirp_dbm},
                        {"pl_theoretical_db", b.pl_theoretical_db},
                        {"pl_measured_db", b.pl_measured_db},
                        {"gap_db", b.gap_db}};
    row["pl_measured_ref_db"] =
        std::isnan(b.pl_measured_ref_db) ? ordered_json(nullptr) : ordered_json(b.pl_measured_ref_db);
    row["gap_ref_db"] = std::isnan(b.gap_ref_db) ? ordered_json(nullptr) : ordered_json(b.gap_ref_db);
    rows.push_back(row);
  }
  j["budget_rows"] = rows;

  ordered_json trace = ordered_json::array();
  for (const auto& t : stage_trace)
    trace.push_back({{"stage", t.stage}, {"input_dbm", t.input_dbm}, {"output_dbm", t.output_dbm}});
  j["stage_trace"] = trace;

  return j.dump(2) + "\n";
}

RunResult RunResult::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("result parse error: ") + e.what());
  }

  RunResult r;
  r.schema_version = j.at("schema_version").get<int>();
  r.library_version = j.at("library_version").get<std::string>();
  r.kind = j.at("kind").get<std::string>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.config_hash = j.at("config_hash").get<std::string>();
  r.snr_mode = j.at("snr_mode").get<std::string>();
  for (const auto& m : j.at("ue_metrics"))
    r.ue_metrics.push_back({m.at("ue").get<int>(), m.at("constellation").get<std::string>(),
                            m.at("num_symbols").get<int>(), m.at("evm_percent").get<double>(),
                            m.at("ser").get<double>()});
  r.selected_beams = j.at("selected_beams").get<std::vector<int>>();
  r.control_word = j.at("control_word").get<std::string>();
  for (const auto& row : j.at("sweep_magnitudes"))
    r.sweep_magnitudes.push_back({row[0].get<double>(), row[1].get<double>(), row[2].get<double>(),
                                  row[3].get<double>()});
  for (const auto& b : j.at("budget_rows")) {
    BudgetRow row;
    row.distance_m = b.at("distance_m").get<double>();
    row.eirp_dbm = b.at("eirp_dbm").get<double>();
    row.pl_theoretical_db = b.at("pl_theoretical_db").get<double>();
    row.pl_measured_db = b.at("pl_measured_db").get<double>();
    row.gap_db = b.at("gap_db").get<double>();
    row.pl_measured_ref_db =
        b.at("pl_measured_ref_db").is_null() ? std::nan("") : b.at("pl_measured_ref_db").get<double>();
    row.gap_ref_db = b.at("gap_ref_db").is_null() ? std::nan("") : b.at("gap_ref_db").get<double>();
    r.budget_rows.push_back(row);
  }
  for (const auto& t : j.at("stage_trace"))
    r.stage_trace.push_back({t.at("stage").get<std::string>(), t.at("input_dbm").get<double>(),
                             t.at("output_dbm").get<double>()});
  return r;
}

namespace {

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file '" + path + "'");
  return out;
}

void finish(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw IoError("write failed for '" + path + "'");
}

void put_f32_le(std::ostream& os, float v) {
  std::uint32_t bits;
  std::memcpy(&bits, &v, 4);
  const unsigned char b[4] = {static_cast<unsigned char>(bits & 0xff),
                              static_cast<unsigned char>((bits >> 8) & 0xff),
                              static_cast<unsigned char>((bits >> 16) & 0xff),
                              static_cast<unsigned char>((bits >> 24) & 0xff)};
  os.write(reinterpret_cast<const char*>(b), 4);
}

std::string csv_field(double v) { return std::isnan(v) ? "" : fmt_double(v); }

}  // namespace

std::vector<std::string> export_results(const RunResult& result, const std::string& out_dir,
                                        const ExportOptions& options) {
  if (options.format != "csv" && options.format != "json")
    throw ConfigError("export format must be 'csv' or 'json'");

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

  const std::string suffix = result.config_hash + "_s" + std::to_string(result.seed);
  std::vector<std::string> written;
  auto path_of = [&](const std::string& prefix, const std::string& ext) {
    return (fs::path(out_dir) / (prefix + "_" + suffix + ext)).string();
  };

  {
    const std::string p = path_of("result", ".json");
    auto out = open_out(p);
    out << result.to_json_text();
    finish(out, p);
    written.push_back(p);
  }

  if (options.format == "csv") {
    if (!result.ue_metrics.empty()) {
      const std::string p = path_of("metrics", ".csv");
      auto out = open_out(p);
      out << "ue,constellation,num_symbols,evm_percent,ser\n";
      for (const auto& m : result.ue_metrics)
        out << m.ue << ',' << m.constellation << ',' << m.num_symbols << ','
            << fmt_double(m.evm_percent) << ',' << fmt_double(m.ser) << '\n';
      finish(out, p);
      written.push_back(p);
    }

    for (std::size_t u = 0; u < result.constellations.size(); ++u) {
      const std::string p = path_of("constellation_ue" + std::to_string(u), ".csv");
      auto out = open_out(p);
      out << "ue,subcarrier,symbol_index,re,im,ref_re,ref_im\n";
      for (const auto& pt : result.constellations[u])
        out << u << ',' << pt.subcarrier << ',' << pt.symbol_index << ','
            << fmt_double(pt.equalized.real()) << ',' << fmt_double(pt.equalized.imag()) << ','
            << fmt_double(pt.reference.real()) << ',' << fmt_double(pt.reference.imag()) << '\n';
      finish(out, p);
      written.push_back(p);
    }

    if (!result.sweep_magnitudes.empty()) {
      const std::string p = path_of("selection", ".csv");
      auto out = open_out(p);
      out << "frame,subarray,chosen_beam,magnitude_beam0,magnitude_beam1,magnitude_beam2,"
             "magnitude_beam3\n";
      for (std::size_t r = 0; r < result.sweep_magnitudes.size(); ++r) {
        const auto& m = result.sweep_magnitudes[r];
        out << 0 << ',' << r << ',' << result.selected_beams[r] << ',' << fmt_double(m[0]) << ','
            << fmt_double(m[1]) << ',' << fmt_double(m[2]) << ',' << fmt_double(m[3]) << '\n';
      }
      finish(out, p);
      written.push_back(p);
    }

    if (!result.budget_rows.empty()) {
      const std::string p = path_of("budget", ".csv");
      auto out = open_out(p);
      out << "distance_m,eirp_dbm,pl_theoretical_db,pl_measured_db,gap_db,pl_measured_ref_db,"
             "gap_ref_db\n";
      for (const auto& b : result.budget_rows)
        out << fmt_double(b.distance_m) << ',' << fmt_double(b.eirp_dbm) << ','
            << fmt_double(b.pl_theoretical_db) << ',' << fmt_double(b.pl_measured_db) << ','
            << fmt_double(b.gap_db) << ',' << csv_field(b.pl_measured_ref_db) << ','
            << csv_field(b.gap_ref_db) << '\n';
      finish(out, p);
      written.push_back(p);
    }

    if (!result.stage_trace.empty()) {
      const std::string p = path_of("stage_trace", ".csv");
      auto out = open_out(p);
      out << "stage,input_dbm,output_dbm\n";
      for (const auto& t : result.stage_trace)
        out << t.stage << ',' << fmt_double(t.input_dbm) << ',' << fmt_double(t.output_dbm) << '\n';
      finish(out, p);
      written.push_back(p);
    }
  }

  if (options.dump_iq && !result.rx_iq.empty()) {
    // Raw little-endian float32, interleaved re/im, chain-major.
    const std::string p = path_of("iq", ".f32");
    auto out = open_out(p);
    for (const auto& chain : result.rx_iq)
      for (const auto& s : chain) {
        put_f32_le(out, static_cast<float>(s.real()));
        put_f32_le(out, static_cast<float>(s.imag()));
      }
    finish(out, p);
    written.push_back(p);
  }

  if (options.dump_channel && !result.channel_dump.empty()) {
    const std::string p = path_of("channel", ".bin");
    auto out = open_out(p);
    channel::write_channel_dump(out, result.channel_dump);
    finish(out, p);
    written.push_back(p);
  }

  return written;
}

std::string budget_report_text(const RunResult& result) {
  std::ostringstream os;
  os << "  d (m)  PL_th (dB)  PL_m (dB)  Gap (dB)  PL_m ref (dB)  Gap ref (dB)\n";
  for (const auto& b : result.budget_rows) {
    auto col = [&](const std::string& s, int width) {
      os << std::string(width > static_cast<int>(s.size()) ? width - s.size() : 1, ' ') << s;
    };
    col(fmt_fixed(b.distance_m, 1), 7);
    col(fmt_fixed(b.pl_theoretical_db, 1), 12);
    col(fmt_fixed(b.pl_measured_db, 1), 11);
    col(fmt_fixed(b.gap_db, 1), 10);
    col(std::isnan(b.pl_measured_ref_db) ? "-" : fmt_fixed(b.pl_measured_ref_db, 1), 15);
    col(std::isnan(b.gap_ref_db) ? "-" : fmt_fixed(b.gap_ref_db, 1), 13);
    os << '\n';
  }
  return os.str();
}

}  // namespace mmwsim::scenario
