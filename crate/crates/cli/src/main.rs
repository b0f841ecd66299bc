use std::process::ExitCode;

fn main() -> ExitCode {
    let out = nilaffine_cli::run(std::env::args_os(), &mut std::io::stdin().lock());
    print!("{}", out.stdout);
    ExitCode::from(out.code as u8)
}
