fn main() {
    std::process::exit(knn_dbscan::cli::run(std::env::args_os()));
}
