#include "asfplus/cli.hpp"

int main(int argc, char** argv) { return asfplus::run_cli(argc, argv); }
