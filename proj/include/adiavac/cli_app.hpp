#ifndef ADIAVAC_CLI_APP_HPP
#define ADIAVAC_CLI_APP_HPP

namespace adiavac {

/// Entry point of the `adiavac` command-line tool.
/// Exit codes: 0 success, 2 Hadamard violation, 3 order/smoothness exhausted,
/// 4 I/O or parse error, 5 invariant failure.
int run_cli(int argc, char** argv);

} // namespace adiavac

#endif
