#ifndef MOELA_TYPES_HPP
#define MOELA_TYPES_HPP

#include <Eigen/Core>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace moela {

// Row-per-point matrices throughout: a sample of N points in d dimensions is N x d.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using IndexList = std::vector<std::size_t>;

enum class ErrorCode {
    Domain,          // input outside the problem box
    Contract,        // violated precondition (size mismatch, ...)
    Config,          // invalid configuration (budget < population, ...)
    Unsupported,     // e.g. hypervolume for m outside {2,3}
    Degenerate,      // data that admits no meaningful result
    IncompleteData,  // missing rows in a performance table
    Io,              // missing or unreadable file
    Schema,          // file readable but not in the expected layout
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) { }
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

// Copies the given rows of `m` into a new matrix, preserving order.
Matrix select_rows(const Matrix& m, const IndexList& rows);

} // namespace moela

#endif
