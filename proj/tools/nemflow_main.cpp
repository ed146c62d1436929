#include "nemflow/cli.hpp"

int main(int argc, char** argv) { return nemflow::cli_dispatch(argc, argv); }
