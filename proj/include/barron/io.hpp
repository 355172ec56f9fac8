#pragma once

#include <string>

#include "json.hpp"

#include "barron/classifier.hpp"
#include "barron/measure.hpp"
#include "barron/network.hpp"
#include "barron/spectral.hpp"

namespace barron {

// Parse errors are rethrown as config_error with nlohmann's line/column info.
nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

// Shortest round-trip decimal form of a double (used for CSV payloads so that
// re-runs are byte-identical).
std::string format_double(double v);

// Network file format:
// {"input_dim": d, "layers": [{"weights": [[row], ...], "bias": [..]}, ...],
//  "activation": "relu", "meta": {...}}.
// Weights are row-major; numbers round-trip bit-exactly for finite doubles.
nlohmann::json network_to_json(const NeuralNetwork& net,
                               const nlohmann::json& meta = nlohmann::json::object());
NeuralNetwork network_from_json(const nlohmann::json& j);
void save_network(const std::string& path, const NeuralNetwork& net,
                  const nlohmann::json& meta = nlohmann::json::object());
NeuralNetwork load_network(const std::string& path);

// Spectral function file format:
// {"domain": {"lower": [...], "upper": [...]}, "base_point": [...],
//  "constant": c, "atoms": [{"freq": [...], "modulus": m, "phase": p}, ...]}
nlohmann::json barron_spec_to_json(const BarronFunctionSpec& f);
BarronFunctionSpec barron_spec_from_json(const nlohmann::json& j);
void save_barron_spec(const std::string& path, const BarronFunctionSpec& f);
BarronFunctionSpec load_barron_spec(const std::string& path);

// Boundary-set file format:
// {"dim": d, "patches": [{"rect": {"lower": [...], "upper": [...]},
//  "axis": i, "sign": s, "B": b, "boundary": <spectral spec>}, ...]}
// Loading validates rectangle disjointness and lists offending pairs.
nlohmann::json boundary_set_to_json(const BarronBoundarySet& omega);
BarronBoundarySet boundary_set_from_json(const nlohmann::json& j);
void save_boundary_set(const std::string& path, const BarronBoundarySet& omega);
BarronBoundarySet load_boundary_set(const std::string& path);

// Measure file format, tagged union on "kind":
//  {"kind": "uniform_box", "box": {...}}
//  {"kind": "product_marginals", "alpha": a, "marginals": [{"x": [...], "cdf": [...]}, ...]}
//  {"kind": "density_weighted", "base": {...}, "density": {"name": ..., "a": ...}, "sup": s}
nlohmann::json measure_to_json(const MeasureSpec& mu);
MeasureSpec measure_from_json(const nlohmann::json& j);
void save_measure(const std::string& path, const MeasureSpec& mu);
MeasureSpec load_measure(const std::string& path);

}  // namespace barron
