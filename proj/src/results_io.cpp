// Copyright 2026 The goldnoma Authors
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

#include "goldnoma/results_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "goldnoma/format.hpp"

namespace goldnoma::harness {

namespace fs = std::filesystem;

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
    out << kSweepHeader << '\n';
    for (const auto& r : result.rows) {
        out << format_double(r.axis) << ',' << r.user_id << ',' << r.metric << ','
            << format_double(r.value) << ',' << format_double(r.stderr_value) << ',' << r.trials
            << '\n';
    }
}

std::string sidecar_json(const SweepResult& result) {
    nlohmann::ordered_json j;
    j["kind"] = result.kind;
    j["axis"] = result.axis_name;
    j["fingerprint"] = result.fingerprint;
    j["version"] = std::string(library_version());
    auto& params = j["params"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : result.params) params[k] = v;
    auto& config = j["config"] = nlohmann::ordered_json::object();
    std::istringstream lines(result.config.canonical_text());
    for (std::string line; std::getline(lines, line);) {
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        config[line.substr(0, eq)] = line.substr(eq + 1);
    }
    return j.dump(2) + '\n';
}

fs::path sidecar_path(const fs::path& csv) {
    fs::path p = csv;
    p += ".json";
    return p;
}

std::optional<std::string> read_fingerprint(const fs::path& sidecar) {
    std::ifstream in(sidecar);
    if (!in) return std::nullopt;
    const auto j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("fingerprint") ||
        !j["fingerprint"].is_string()) {
        return std::nullopt;
    }
    return j["fingerprint"].get<std::string>();
}

namespace {

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace

WrittenFiles save_sweep(const SweepResult& result, const fs::path& dir, bool force) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw std::runtime_error("cannot create " + dir.string() + ": " + ec.message());

    WrittenFiles files{dir / (result.kind + ".csv"), {}};
    files.sidecar = sidecar_path(files.csv);
    if (!force && (fs::exists(files.csv) || fs::exists(files.sidecar))) {
        const auto existing = read_fingerprint(files.sidecar);
        if (!existing || *existing != result.fingerprint) {
            throw std::runtime_error(files.csv.string() + " exists with fingerprint " +
                                     existing.value_or("<unknown>") + ", new run has " +
                                     result.fingerprint + "; pass --force to overwrite");
        }
    }
    std::ostringstream csv;
    write_sweep_csv(csv, result);
    write_file(files.csv, csv.str());
    write_file(files.sidecar, sidecar_json(result));
    return files;
}

}  // namespace goldnoma::harness
