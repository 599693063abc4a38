from kasami_welch.cli import main

raise SystemExit(main())
