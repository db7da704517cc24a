#pragma once

#include <string>

#include "deltaef/instance.hpp"
#include "deltaef/pipeline.hpp"
#include "deltaef/verify.hpp"

namespace deltaef {

// Instance documents are JSON objects with keys "A" (integer rows), "b"
// (integer list), and optional "label", "graph_hint" {nodes, arcs,
// column_map}, "trusted_profile" {delta, gcd, strict}. Integers may be JSON
// numbers or decimal strings. Parsing validates the instance (shape and rank)
// and throws ParseError naming the offending field.
ProblemInstance parse_instance_text(const std::string& text);
ProblemInstance parse_instance(const std::string& path);

std::string instance_to_text(const ProblemInstance& inst);
void emit_instance(const ProblemInstance& inst, const std::string& path);

enum class EmitFormat { lp, mps, json };

// Artifact emission. LP and MPS clear each row to integer coefficients by its
// denominator lcm; JSON keeps exact "numerator/denominator" strings and
// round-trips byte-identically through parse_artifact_text (the slack-space
// system and graph realization are runtime objects and are not serialized).
std::string emit_to_text(const EfArtifact& art, EmitFormat format);
void emit(const EfArtifact& art, EmitFormat format, const std::string& path);

// Inverse of the JSON emission.
EfArtifact parse_artifact_text(const std::string& text);

// Verification report as a JSON document.
std::string report_to_text(const VerificationReport& rep);

// Command-line surface: check, build, verify, gen. Returns the process exit
// code: 0 accept/pass, 2 reject/fail, 3 undecided/inconclusive, 64 usage or
// input errors.
int run_cli(int argc, char** argv);

}  // namespace deltaef
