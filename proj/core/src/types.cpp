#include "moela/types.hpp"

namespace moela {

const char* to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Contract: return "contract";
    case ErrorCode::Config: return "config";
    case ErrorCode::Unsupported: return "unsupported";
    case ErrorCode::Degenerate: return "degenerate";
    case ErrorCode::IncompleteData: return "incomplete-data";
    case ErrorCode::Io: return "io";
    case ErrorCode::Schema: return "schema";
    }
    return "unknown";
}

Matrix select_rows(const Matrix& m, const IndexList& rows)
{
    Matrix out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = m.row(static_cast<Eigen::Index>(rows[i]));
    }
    return out;
}

} // namespace moela
