#include "patpoly/error.hpp"

namespace patpoly {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "ParseError";
    case ErrorCode::not_in_lattice: return "NotInLattice";
    case ErrorCode::not_in_span: return "NotInSpan";
    case ErrorCode::degenerate_input: return "DegenerateInput";
    case ErrorCode::dependent_columns: return "DependentColumns";
    case ErrorCode::budget_exceeded: return "BudgetExceeded";
    case ErrorCode::negative_entry: return "NegativeEntry";
    case ErrorCode::empty_class: return "EmptyClass";
    case ErrorCode::unknown_id: return "UnknownId";
    case ErrorCode::not_lattice: return "NotLattice";
    case ErrorCode::not_distributive: return "NotDistributive";
    case ErrorCode::verification_failure: return "VerificationFailure";
    case ErrorCode::mismatch_against_ehrhart: return "MismatchAgainstEhrhart";
    case ErrorCode::invalid_argument: return "InvalidArgument";
  }
  return "Error";
}

}  // namespace patpoly
