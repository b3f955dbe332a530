#pragma once

#include <iosfwd>

namespace symplex::cli {

/// Runs one subcommand. Data goes to `out`, diagnostics to `err`.
/// Exit codes: 0 success, 1 domain failure, 2 usage or parse error.
///
///   symplex mult            [input] [--out path]      {"a": x, "b": y} or a word
///   symplex sp-check        [input] [--out path]      matrix
///   symplex factor          [input] [--out path] [--local p] [--verify-steps]
///   symplex conj-delta      [input] [--out path]      {"matrix", "I", "t", "direction"}
///   symplex verify          [--lemma id]... [--seed n] [--out path]
///   symplex monoid-info     [input] [--bound n] [--out path]
///   symplex polarized-check [input | --example] [--bound n] [--out path]
///   symplex pyramid-split   [input] [--out path]      cone
///   symplex random-word     --n n --length k [--ring Z|Q|Fp:p] [--seed n] [--out path]
///
/// Input is read from the named file, or stdin when it is absent or "-".
/// SYMPLEX_LOG=error|info|debug sets the stderr log level.
int dispatch(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace symplex::cli
