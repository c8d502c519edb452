#pragma once

// Output plumbing: RFC-4180 CSV with a config-hash preamble comment, ordered
// JSON payloads, run manifests, and the binary spectrum round-trip format.

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "levykac/errors.hpp"
#include "levykac/spectral.hpp"

namespace levykac::io {

using ordered_json = nlohmann::ordered_json;

inline std::string hash_hex(std::uint64_t h) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline std::string csv_quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

inline std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::uint64_t config_hash,
            const std::vector<std::string>& header)
      : out_(path, std::ios::binary) {
    if (!out_) throw parameter_error("cannot open for writing: " + path);
    out_ << "# config_hash=" << hash_hex(config_hash) << "\n";
    write_row_strings(header);
  }

  void write_row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << csv_quote(cells[i]);
    out_ << "\n";
  }

  void write_row(const std::vector<double>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i)
      out_ << (i ? "," : "") << fmt(cells[i]);
    out_ << "\n";
  }

  template <typename... Ts>
  void row(Ts... vals) {
    write_row(std::vector<double>{static_cast<double>(vals)...});
  }

 private:
  std::ofstream out_;
};

inline void write_json(const std::string& path, const ordered_json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot open for writing: " + path);
  out << j.dump(2) << "\n";
}

inline ordered_json read_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parameter_error("cannot open: " + path);
  ordered_json j;
  in >> j;
  return j;
}

// first line of a CSV payload carries the config hash
inline std::string read_csv_hash(const std::string& path) {
  std::ifstream in(path);
  std::string line;
  if (!std::getline(in, line)) return "";
  const std::string tag = "# config_hash=";
  if (line.rfind(tag, 0) != 0) return "";
  return line.substr(tag.size());
}

// Manifest: identifies the run; wall time lives only here so every other
// payload stays byte-identical across reruns.
inline void write_manifest(const std::string& dir, const std::string& command,
                           std::uint64_t config_hash, std::uint64_t seed, int threads,
                           double wall_seconds) {
  ordered_json j;
  j["tool"] = "levykac";
  j["version"] = "0.1.0";
  j["command"] = command;
  j["config_hash"] = hash_hex(config_hash);
  j["seed"] = seed;
  j["threads"] = threads;
  j["wall_time_s"] = wall_seconds;
  write_json(dir + "/manifest_" + command + ".json", j);
}

// ---------------------------------------------------------------------------
// Spectrum round-trip
// ---------------------------------------------------------------------------

inline void save_spectrum(const std::string& path, const SpectrumResult& spec,
                          std::uint64_t config_hash) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw parameter_error("cannot open for writing: " + path);
  const char magic[8] = {'L', 'K', 'S', 'P', 'E', 'C', '0', '1'};
  out.write(magic, 8);
  auto put_u64 = [&](std::uint64_t v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  auto put_f64 = [&](double v) { out.write(reinterpret_cast<const char*>(&v), 8); };
  put_u64(config_hash);
  put_u64(static_cast<std::uint64_t>(spec.grid.dim));
  put_u64(static_cast<std::uint64_t>(spec.grid.points_per_axis));
  put_f64(spec.grid.half_width);
  put_u64(static_cast<std::uint64_t>(spec.modes()));
  put_f64(spec.solver_tol);
  put_u64(spec.applications);
  put_u64(spec.near_degenerate_warning ? 1 : 0);
  for (double v : spec.eigenvalues) put_f64(v);
  for (double v : spec.residual_norms) put_f64(v);
  for (const auto& phi : spec.phi)
    out.write(reinterpret_cast<const char*>(phi.data()),
              static_cast<std::streamsize>(phi.size() * sizeof(double)));
}

struct LoadedSpectrum {
  SpectrumResult spectrum;
  std::uint64_t config_hash = 0;
};

inline LoadedSpectrum load_spectrum(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parameter_error("cannot open: " + path);
  char magic[8];
  in.read(magic, 8);
  if (std::string(magic, 8) != "LKSPEC01")
    throw parameter_error("not a spectrum file: " + path);
  auto get_u64 = [&]() {
    std::uint64_t v;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  auto get_f64 = [&]() {
    double v;
    in.read(reinterpret_cast<char*>(&v), 8);
    return v;
  };
  LoadedSpectrum out;
  out.config_hash = get_u64();
  const int dim = static_cast<int>(get_u64());
  const int N = static_cast<int>(get_u64());
  const double L = get_f64();
  const int k = static_cast<int>(get_u64());
  out.spectrum.grid = Grid(dim, L, N);
  out.spectrum.solver_tol = get_f64();
  out.spectrum.applications = get_u64();
  out.spectrum.near_degenerate_warning = get_u64() != 0;
  out.spectrum.eigenvalues.resize(k);
  for (double& v : out.spectrum.eigenvalues) v = get_f64();
  out.spectrum.residual_norms.resize(k);
  for (double& v : out.spectrum.residual_norms) v = get_f64();
  const std::size_t total = out.spectrum.grid.total_points();
  out.spectrum.phi.assign(k, std::vector<double>(total));
  for (auto& phi : out.spectrum.phi)
    in.read(reinterpret_cast<char*>(phi.data()),
            static_cast<std::streamsize>(total * sizeof(double)));
  if (!in) throw parameter_error("truncated spectrum file: " + path);
  return out;
}

inline void save_spectrum_csv(const std::string& path, const SpectrumResult& spec,
                              std::uint64_t config_hash) {
  std::vector<std::string> header = {"x"};
  for (int n = 0; n < spec.modes(); ++n) header.push_back("phi_" + std::to_string(n));
  CsvWriter csv(path, config_hash, header);
  for (int j = 0; j < spec.grid.points_per_axis; ++j) {
    std::vector<double> row = {spec.grid.node(j)};
    for (int n = 0; n < spec.modes(); ++n) row.push_back(spec.phi[n][j]);
    csv.write_row(row);
  }
}

}  // namespace levykac::io
