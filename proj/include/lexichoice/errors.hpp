#pragma once

#include <stdexcept>
#include <string>

namespace lexichoice {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DomainError : Error { using Error::Error; };
struct MissingTableEntry : Error { using Error::Error; };
struct InvalidParams : Error { using Error::Error; };
struct ArityMismatch : Error { using Error::Error; };
struct NestingViolation : Error { using Error::Error; };
struct EnumerationCapExceeded : Error { using Error::Error; };
struct SamplingBudgetExceeded : Error { using Error::Error; };
struct BudgetExceeded : Error { using Error::Error; };
struct InsufficientHeadroom : Error { using Error::Error; };
struct ConditionNotViolated : Error { using Error::Error; };
struct PreconditionFailed : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };

}  // namespace lexichoice
