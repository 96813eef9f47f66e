#pragma once

#include <optional>
#include <string>

#include "specbox/inclusion.hpp"
#include "specbox/operator.hpp"
#include "specbox/oracle.hpp"

namespace specbox {

/// Contents of an operator spec file: the tridiagonal generators and/or a
/// pseudoergodic symbol alphabet.
struct OperatorFile {
  std::optional<OperatorSpec> op;
  std::optional<SymbolAlphabet> alphabet;
};

/// Parses the operator JSON format. Complex numbers are [re, im]; block
/// values are row-major nested arrays of them. Throws ParseError on any
/// structural problem.
OperatorFile parse_operator_json(const std::string& text);

/// Canonical serialization (stable field order, 17 significant digits);
/// parse(serialize(parse(x))) is the identity on all fields.
std::string operator_file_to_json(const OperatorFile& file);

OperatorFile load_operator_file(const std::string& path);

/// snprintf %.17g, the deterministic float format used in every emitter.
std::string format_double(double v);

std::string mu_grid_csv(const MuGrid& g);
std::string penalty_csv(const std::vector<std::size_t>& ns, double r, double s);
std::string points_csv(const PointSet& s);
std::string sweep_csv(const SymbolSweep& s);

/// First two columns (re, im) of any points-style CSV; lines starting with
/// '#' or a non-numeric header are skipped.
PointSet parse_points_csv(const std::string& text);

}  // namespace specbox
