#include "snc/cli/app.hpp"

int main(int argc, char** argv) { return snc::cli::run_cli(argc, argv); }
