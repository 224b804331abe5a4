#ifndef GAUSSRES_VALIDATION_HPP
#define GAUSSRES_VALIDATION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "gaussres/qfi.hpp"

namespace gaussres {

enum class ValidationSuite { geometry, symplectic, oracle, limits, all };

ValidationSuite validation_suite_from_string(const std::string& name);

struct ValidationCheck {
    std::string name;
    double measured;   // worst observed error for the check
    double tolerance;
    bool pass;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool all_pass() const;
};

/// Run the named invariant suite. The QfiOptions overload exists so a
/// deliberately mis-configured engine can be shown to fail the oracle suite.
ValidationReport run_validation(ValidationSuite suite);
ValidationReport run_validation(ValidationSuite suite, const QfiOptions& options);

void print_report(std::ostream& os, const ValidationReport& report);

}  // namespace gaussres

#endif
