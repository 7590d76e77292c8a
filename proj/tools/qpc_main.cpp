#include "qpcolor/cli.hpp"

int main(int argc, char** argv) { return qpc::run_cli(argc, argv); }
