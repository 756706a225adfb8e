use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{ArgGroup, Args, Parser, Subcommand};
use wmstego::Algorithm;

mod commands;

use commands::Failure;

/// Hide and recover messages in lossless RGB images.
#[derive(Debug, Parser)]
#[command(name = "wmstego", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Embed a message into a cover image.
    Embed {
        #[command(flatten)]
        algorithm: AlgorithmArg,
        #[arg(long, value_name = "PATH")]
        cover: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
        /// Output stego image (.png or .bmp).
        #[arg(long, short, value_name = "PATH")]
        out: PathBuf,
    },
    /// Recover a message from a stego image.
    Extract {
        #[command(flatten)]
        algorithm: AlgorithmArg,
        #[arg(long, value_name = "PATH")]
        stego: PathBuf,
        /// Write the payload here instead of standard output.
        #[arg(long, short, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Print how many payload bytes an image can carry.
    Capacity {
        #[arg(value_name = "IMAGE")]
        image: PathBuf,
    },
    /// Print MSE and PSNR between two images.
    Psnr {
        #[arg(value_name = "REFERENCE")]
        reference: PathBuf,
        #[arg(value_name = "DISTORTED")]
        distorted: PathBuf,
    },
    /// Embed with both algorithms and tabulate PSNR against the cover.
    Compare {
        #[arg(long, value_name = "PATH")]
        cover: PathBuf,
        #[command(flatten)]
        message: MessageArgs,
    },
}

#[derive(Debug, Args)]
struct AlgorithmArg {
    /// `weighted` (weighted matching) or `lsb` (simple LSB insertion).
    #[arg(long, short, default_value = "weighted", value_name = "NAME")]
    algorithm: Algorithm,
}

#[derive(Debug, Args)]
#[command(group(ArgGroup::new("payload").required(true).args(["message", "message_file"])))]
struct MessageArgs {
    /// Message text, embedded as UTF-8.
    #[arg(long, short, value_name = "TEXT")]
    message: Option<String>,
    /// File with raw payload bytes; `-` reads standard input.
    #[arg(long, value_name = "PATH")]
    message_file: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(Failure::USAGE),
            };
        }
    };

    let result = match cli.command {
        Command::Embed {
            algorithm,
            cover,
            message,
            out,
        } => commands::embed(algorithm.algorithm, &cover, &message.into(), &out),
        Command::Extract {
            algorithm,
            stego,
            out,
        } => commands::extract(algorithm.algorithm, &stego, out.as_deref()),
        Command::Capacity { image } => commands::capacity(&image),
        Command::Psnr {
            reference,
            distorted,
        } => commands::psnr(&reference, &distorted),
        Command::Compare { cover, message } => commands::compare(&cover, &message.into()),
    };

    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("wmstego: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

impl From<MessageArgs> for commands::MessageSource {
    fn from(args: MessageArgs) -> Self {
        match (args.message, args.message_file) {
            (Some(text), _) => commands::MessageSource::Text(text),
            (None, Some(path)) => commands::MessageSource::File(path),
            // clap's required group rules this out
            (None, None) => commands::MessageSource::Text(String::new()),
        }
    }
}
