#include <jcr/cli/app.hpp>

int main(int argc, char** argv) { return jcr::cli::run(argc, argv); }
