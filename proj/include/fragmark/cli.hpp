#pragma once

#include <ostream>

#include "fragmark/watermark.hpp"

#include <json.hpp>

namespace fragmark {

/// Process exit codes.
inline constexpr int kExitAuthentic = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitTampered = 2;

/// JSON verification report: authentic, ber (null when unknown), tampered
/// [{tag_row, tag_col, cover_row, cover_col}], and psnr when computable.
nlohmann::json report_to_json(const VerifyReport& report, const double* psnr_db = nullptr);

/// Entry point of the `fragmark` tool. Subcommands: embed, extract, verify,
/// attack, metrics. Diagnostics go to `err` as a single line.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fragmark
