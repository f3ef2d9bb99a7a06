#pragma once

// JSON and CSV artifacts. Every exact quantity is written as a string
// ("p/q", "a+b*sqrt(d)", "x,y" ring coordinates) so documents round-trip
// without floating point. Output is deterministic: no timestamps, fixed key
// order.

#include "ccf/corpus.hpp"
#include "ccf/expansion.hpp"
#include "ccf/growth.hpp"
#include "ccf/lagrange.hpp"
#include "ccf/verify.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace ccf {

using Json = nlohmann::ordered_json;

inline constexpr const char* kReportSchema = "ccf-report/1";

/// "x,y" without the ring suffix.
std::string coords(const RingElement& e);
std::string coords(const FieldElement& e);

/// Quotient list "x,y;x,y;..." (ring suffixes optional).
std::vector<RingElement> parse_quotients(std::string_view text, Ring ring);

/// Context document {"ring", "minpoly": ["x,y", "x,y", "x,y"], and either
/// "bracket": ["re_lo","re_hi","im_lo","im_hi"] or "root": "+im"}.
SurdContextPtr parse_context(const Json& doc);
Json context_to_json(const SurdContext& ctx);

/// Partition file: an object {"ring", "cells": [...], "radius", "j_radius"}
/// or a bare list of cells. Each cell is {"vertex": "x,y", "constraints":
/// [{"type": "halfplane", "re", "eta", "le", "strict"} |
///  {"type": "disk", "center": ["re","eta"], "radius_sq", "inside", "strict"}]}
/// where a point is re + i*eta*sqrt(D).
PartitionSpec parse_partition(const Json& doc, std::optional<Ring> ring = std::nullopt);
Json partition_to_json(const PartitionSpec& spec);

Json to_json(const ExpansionStep& step);
Json to_json(const ExpansionReport& report);
Json to_json(const PeriodResult& period);
Json to_json(const GrowthReport& growth);
Json to_json(const Thm51Result& r);
Json to_json(const Cor52Result& r);
Json to_json(const GrowthPolynomialCheck& r);
Json to_json(const SweepResult& r);
/// Corpus totals plus one line per surd (no per-step data).
Json to_json(const CorpusSummary& s, const CorpusOptions& opts);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& doc);

Json read_json_file(const std::string& path);
/// Writes to a temporary file in the same directory and renames it over path.
void write_file_atomic(const std::string& path, const std::string& content);

}  // namespace ccf
