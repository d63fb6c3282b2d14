#pragma once

#include <optional>
#include <string>

#include "chessboard.hpp"
#include "oracle.hpp"
#include "scalar_field.hpp"
#include "synthesis.hpp"

namespace cubetop::io {

// All formats are JSON. Cell multi-indices are 1-based; flat arrays are
// row-major with axis 1 fastest. Reports are byte-identical for identical
// inputs and seeds; levels and coordinates are emitted as decimal strings
// with 12 significant digits.

Labeling parse_labeling(const std::string& text);
CellSet parse_cellset(const std::string& text);
IntegerField parse_integer_field(const std::string& text);
ScalarField parse_field(const std::string& text);
ConnSepSpec parse_conn_sep(const std::string& text);

std::string field_to_json(const ScalarField& f);
std::string synthesized_to_json(const SynthesizedField& f);
std::string cellset_to_json(const CellSet& s);
std::string chain_json(const Chain& chain);
std::string certificate_json(const SeparationCertificate& cert);

std::string digest_hex(const std::string& bytes);

std::string witness_report(const std::string& digest, bool generalized, const WitnessResult& w);
std::string verify_report(const VerifyReport& rep);
std::string level_report(const std::string& digest, int axis, const LevelResult& r);
std::string analyze_report(const std::string& digest, const AnalysisResult& r);
std::string synthesize_report(const std::string& digest, const SynthesizedField& f,
                              const std::string& out_path);
std::string violation_report(const std::string& digest, const Violation& v);
std::string equivalence_report(const oracle::EquivalenceReport& rep);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace cubetop::io
