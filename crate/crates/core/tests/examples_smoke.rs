//! Runs every example binary that `cargo test` builds alongside this target.

use std::path::PathBuf;
use std::process::Command;

const EXAMPLES: [&str; 7] = [
    "group_characters",
    "gf2m_field",
    "biased_sets",
    "quantum_hash",
    "balanced_code",
    "equality_protocol",
    "size_accounting",
];

fn example_path(name: &str) -> PathBuf {
    // target/<profile>/deps/<this test> -> target/<profile>/examples/<name>
    let exe = std::env::current_exe().unwrap();
    let dir = exe.parent().unwrap().parent().unwrap().join("examples");
    dir.join(format!("{name}{}", std::env::consts::EXE_SUFFIX))
}

#[test]
fn examples_run() {
    for name in EXAMPLES {
        let path = example_path(name);
        assert!(
            path.exists(),
            "{} missing; build examples with `cargo test`",
            path.display()
        );
        let o = Command::new(&path).output().unwrap();
        assert!(o.status.success(), "{name}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty(), "{name} printed nothing");
    }
}
