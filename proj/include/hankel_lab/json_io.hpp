#pragma once

#include <string>

#include <json.hpp>

#include "hankel_lab/aak.hpp"
#include "hankel_lab/corpus.hpp"
#include "hankel_lab/schmidt.hpp"

namespace hankel_lab {

using Json = nlohmann::ordered_json;

/// Malformed or inconsistent symbol description (CLI exit code 2).
class SpecError : public DomainError {
 public:
  using DomainError::DomainError;
};

// Complex numbers are [re, im]; plain numbers are accepted on input.
Json to_json(Complex c);
Complex complex_from_json(const Json& j);

Json to_json(const Polynomial& p);
Json to_json(const ComplexSeries& f);
Json to_json(const RationalFunction& r);
/// {"phase": ..., "zeros": [[re, im], ...]}
Json to_json(const BlaschkeProduct& b);
/// Accepts {"phase", "zeros"} or {"monomial": k} (exactly z^k).
BlaschkeProduct blaschke_from_json(const Json& j);

Json to_json(const SymbolSpec& spec);
SymbolSpec symbol_spec_from_json(const Json& j);
/// Reads and validates a spec file; every failure is a SpecError.
SymbolSpec load_symbol_spec(const std::string& path);

Json to_json(const SingularCluster& c);
Json to_json(const SchmidtDecomposition& d);
Json to_json(const InnerParameter& p);
Json to_json(const DegreeReport& r);
Json to_json(const AAKCertificate& c);
Json to_json(const AAKReport& r);

}  // namespace hankel_lab
