#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "spreadlab/exthresh.hpp"
#include "spreadlab/hypergraph.hpp"
#include "spreadlab/spread.hpp"

namespace spreadlab {

// instance files: {"n": int, "edges": [[int,...],...]}
Hypergraph read_instance_json(const std::string& text, bool allow_empty_edges = false);
Hypergraph load_instance(const std::string& path, bool allow_empty_edges = false);
std::string instance_to_json(const Hypergraph& h);

std::string certificate_to_json(const SpreadCertificate& cert);
std::string spread_measure_to_json(const SpreadMeasure& m);

// fixed shortest-round-trip-safe formatting used in all CSV output
std::string format_double(double x);
std::string csv_row(const std::vector<std::string>& fields);

// FNV-1a over the canonical config string; printed on every CSV row
std::string config_hash(const std::string& canonical_config);

}  // namespace spreadlab
