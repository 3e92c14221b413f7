#include "outcx/cli.hpp"

int main(int argc, char** argv) { return outcx::run_cli(argc, argv); }
