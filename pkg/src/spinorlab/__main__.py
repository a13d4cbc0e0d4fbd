from spinorlab.cli import main

raise SystemExit(main())
