#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fockcalc/spectrum.hpp"
#include "fockcalc/weyl_l2.hpp"

namespace fockcalc::io {

using nlohmann::json;

class spec_parse_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Parsed operator specification document.
struct OperatorSpec {
    DiffOp op;
    std::optional<ConjugationParams> conjugation;
    std::optional<int> truncation;
};

/// Coefficients serialize as [re, im]; exact rational components as strings
/// ("3", "-1/2"), approximate ones as numbers. Parsing accepts a bare
/// number for a real coefficient; integral numbers are read back in exact
/// mode, non-integral ones stay approximate.
json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json complex_to_json(Complex z);

json diffop_to_json(const DiffOp& op);
DiffOp diffop_from_json(const json& j);

json spec_to_json(const OperatorSpec& spec);
OperatorSpec spec_from_json(const json& j);
OperatorSpec spec_from_string(const std::string& text);

json l2op_to_json(const L2Op& op);
L2Op l2op_from_json(const json& j);

json spectrum_to_json(const SpectrumResult& result);

json criterion_to_json(const std::string& check, const CriterionReport& report);

/// FNV-1a digest of a canonicalized document, for run-report provenance.
std::uint64_t fnv1a(const std::string& text);

}  // namespace fockcalc::io
