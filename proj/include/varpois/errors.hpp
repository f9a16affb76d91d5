#pragma once

#include <stdexcept>
#include <string>

namespace vp {

class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& msg) : std::runtime_error(msg), kind_(std::move(kind)) {}
    const std::string& kind() const { return kind_; }

private:
    std::string kind_;
};

#define VP_ERROR(Name)                                                     \
    class Name : public Error {                                            \
    public:                                                                \
        explicit Name(const std::string& msg = #Name) : Error(#Name, msg) {} \
    };

VP_ERROR(ShapeMismatch)
VP_ERROR(NotExact)
VP_ERROR(UndecidableResidue)
VP_ERROR(TruncationExceeded)
VP_ERROR(DegenerateShape)
VP_ERROR(NotAMajorant)
VP_ERROR(DegenerateLeadingMatrix)
VP_ERROR(NoRationalSolution)
VP_ERROR(Incomplete)
VP_ERROR(NotSkewadjoint)
VP_ERROR(NotPoisson)
VP_ERROR(NotQuasiconstant)
VP_ERROR(OutOfFiltration)
VP_ERROR(NotClosed)
VP_ERROR(LeadingCoeffSingular)
VP_ERROR(LeadingCoeffNotIdentity)
VP_ERROR(BadSupport)
VP_ERROR(NotInSigma)
VP_ERROR(NoPreimage)
VP_ERROR(ParseError)
VP_ERROR(ArityError)
VP_ERROR(UnknownCommand)

#undef VP_ERROR

}  // namespace vp
