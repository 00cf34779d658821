#include "adiavac/cli_app.hpp"

int main(int argc, char** argv) { return adiavac::run_cli(argc, argv); }
