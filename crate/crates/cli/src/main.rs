fn main() { let args: Vec<String> = std::env::args().skip(1).collect(); let (code, out) = tightspan_cli::run_cli(&args); print!("{}", out); std::process::exit(code); }
