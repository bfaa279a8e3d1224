#pragma once

#include <stdexcept>
#include <string>

namespace mogar {

// Malformed or inconsistent input data (CSV shape, bad numeric cells, ...).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A caller broke an operation's precondition.
struct ContractError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A metric was requested for counts where its formula is undefined.
struct UndefinedMetricError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The GA cannot build an initial population from the given frequent itemsets.
struct SeedingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace mogar
