use std::process::ExitCode;

fn main() -> ExitCode {
    match spincorr_cli::run(std::env::args_os()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            if let Some(clap_err) = err.downcast_ref::<clap::Error>() {
                // clap renders help/version and usage errors itself, with
                // exit code 0 for the former and 2 for the latter.
                let _ = clap_err.print();
                ExitCode::from(clap_err.exit_code() as u8)
            } else {
                eprintln!("error: {err:#}");
                ExitCode::FAILURE
            }
        }
    }
}
