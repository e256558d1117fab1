#pragma once

#include <stdexcept>
#include <string>

namespace csymrd {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define CSYMRD_DEFINE_ERROR(NAME)                                              \
    class NAME : public Error {                                                \
    public:                                                                    \
        using Error::Error;                                                    \
    }

CSYMRD_DEFINE_ERROR(DomainError);            // evaluation outside a field's domain
CSYMRD_DEFINE_ERROR(UnsupportedOrder);       // callable field lacks requested derivatives
CSYMRD_DEFINE_ERROR(InvalidParams);          // catalogue parameter constraint violated
CSYMRD_DEFINE_ERROR(UnsupportedDiffusivity); // no closed-form antiderivative/inverse
CSYMRD_DEFINE_ERROR(SingularManifold);       // xi == 0 at a projection point
CSYMRD_DEFINE_ERROR(UnsupportedOperator);    // no catalogued ansatz for this operator
CSYMRD_DEFINE_ERROR(IncompatiblePair);       // system/ansatz pair is not catalogued
CSYMRD_DEFINE_ERROR(StiffnessFailure);       // step collapse without solution growth
CSYMRD_DEFINE_ERROR(PositivityLoss);         // grid component crossed the domain guard
CSYMRD_DEFINE_ERROR(StepCollapse);           // dt fell below the floor
CSYMRD_DEFINE_ERROR(DegenerateErrors);       // zero or non-monotone error sequence
CSYMRD_DEFINE_ERROR(BoundaryCase);           // classifier parameter on a sign boundary
CSYMRD_DEFINE_ERROR(UsageError);             // bad CLI flags or config keys

#undef CSYMRD_DEFINE_ERROR

} // namespace csymrd
