macro_rules! example {
    ($name:ident) => {
        mod $name {
            include!(concat!("../examples/", stringify!($name), ".rs"));

            #[test]
            fn runs() {
                main();
            }
        }
    };
}

example!(hopf_link);
example!(thickness_from_file);
example!(tammes);
example!(trefoil_sweep);
example!(lattice_densities);
example!(revolved_profile);
example!(export_mesh);
example!(paper_report);
