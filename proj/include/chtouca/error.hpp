#pragma once

#include <stdexcept>
#include <string>

namespace chtouca {

// Base of every error a module operation can raise on bad mathematical input.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define CHTOUCA_DOMAIN_ERROR(Name)                                        \
    class Name : public DomainError {                                     \
    public:                                                               \
        explicit Name(const std::string& what = #Name)                    \
            : DomainError(#Name, what) {}                                 \
    }

CHTOUCA_DOMAIN_ERROR(NotAPave);
CHTOUCA_DOMAIN_ERROR(EmptyInterior);
CHTOUCA_DOMAIN_ERROR(NotAPaving);
CHTOUCA_DOMAIN_ERROR(NotAdmissible);
CHTOUCA_DOMAIN_ERROR(TooLarge);
CHTOUCA_DOMAIN_ERROR(WrongDimension);
CHTOUCA_DOMAIN_ERROR(Singular);
CHTOUCA_DOMAIN_ERROR(ZeroLambda);
CHTOUCA_DOMAIN_ERROR(InvalidData);
CHTOUCA_DOMAIN_ERROR(NotOnStratum);
CHTOUCA_DOMAIN_ERROR(ZeroMu);
CHTOUCA_DOMAIN_ERROR(NotAChain);
CHTOUCA_DOMAIN_ERROR(NoDominantChain);
CHTOUCA_DOMAIN_ERROR(NotConvexEnough);
CHTOUCA_DOMAIN_ERROR(NonInvertibleRoots);
CHTOUCA_DOMAIN_ERROR(NonIntegralExponent);
CHTOUCA_DOMAIN_ERROR(RootFindingFailed);

#undef CHTOUCA_DOMAIN_ERROR

// Malformed input files; maps to exit status 2 in the CLI.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace chtouca
