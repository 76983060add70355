//! Driving the command-line interface in-process.

fn main() {
    let calls: [&[&str]; 4] = [
        &["count", "--family", "plane-binary", "--pattern", "(()())", "--n", "5"],
        &["--format", "csv", "series", "--family", "planted-plane", "--pattern", "()", "--N", "6"],
        &["--format", "plain", "compare", "--family", "b", "--pattern1", "()", "--pattern2", "(()())"],
        &["constants", "--precision", "12"],
    ];
    for args in calls {
        let argv = std::iter::once("treembed").chain(args.iter().copied());
        let code = treembed::cli::run(argv, &mut std::io::stdout(), &mut std::io::stderr());
        println!("exit {code}\n");
    }
}
