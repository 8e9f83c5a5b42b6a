#pragma once

#include <stdexcept>
#include <string>

namespace gfe {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define GFE_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                             \
    public:                                                                 \
        explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
    }

// ring_core
GFE_DEFINE_ERROR(RetractionError);
GFE_DEFINE_ERROR(NotAUnit);
GFE_DEFINE_ERROR(DecompositionFailure);
GFE_DEFINE_ERROR(ParseError);

// residue_rings
GFE_DEFINE_ERROR(BadPrime);
GFE_DEFINE_ERROR(NonIntegralDenominator);

// unit_sieve
GFE_DEFINE_ERROR(UnsupportedPrime);
GFE_DEFINE_ERROR(KernelNotTrivial);
GFE_DEFINE_ERROR(IdentityCheckFailed);
GFE_DEFINE_ERROR(InternalError);

// frey_filter
GFE_DEFINE_ERROR(BadReduction);
GFE_DEFINE_ERROR(FieldTooLarge);
GFE_DEFINE_ERROR(MissingFreyData);

// descent_curves
GFE_DEFINE_ERROR(DegenerateLambda);
GFE_DEFINE_ERROR(UnknownPointSet);
GFE_DEFINE_ERROR(CapExceeded);

// brute_oracle
GFE_DEFINE_ERROR(NotCoprime);
GFE_DEFINE_ERROR(UnsupportedPair);

#undef GFE_DEFINE_ERROR

}  // namespace gfe
