fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (code, report) = cr_symmetry::cli::run(&args);
    println!("{}", serde_json::to_string_pretty(&report).expect("reports serialize"));
    std::process::exit(code);
}
