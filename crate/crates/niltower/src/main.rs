use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let caps = match niltower::caps_from_env(|k| std::env::var(k).ok()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("niltower: {e}");
            return ExitCode::from(2);
        }
    };
    let out = niltower::run_args(std::env::args_os(), &caps);
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    eprint!("{}", out.stderr);
    ExitCode::from(out.exit as u8)
}
